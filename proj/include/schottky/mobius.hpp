#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string>

namespace schottky {

using Complex = std::complex<double>;

/// A point of the Riemann sphere in homogeneous coordinates (num : den).
/// The representative is scaled so that max(|num|, |den|) = 1; infinity is
/// (1 : 0) and needs no special casing anywhere.
class SpherePoint {
 public:
  SpherePoint() : num_(0.0), den_(1.0) {}
  /// Throws std::invalid_argument when both coordinates vanish.
  SpherePoint(Complex num, Complex den);

  static SpherePoint finite(Complex z) { return {z, 1.0}; }
  static SpherePoint infinity() { return {1.0, 0.0}; }

  Complex numerator() const { return num_; }
  Complex denominator() const { return den_; }

  bool is_infinity(double tol) const;
  /// num/den; returns a complex infinity when den == 0.
  Complex value() const;

 private:
  Complex num_;
  Complex den_;
};

/// Chordal distance on the sphere (0 for equal points, 2 for antipodes).
double chordal_distance(const SpherePoint& p, const SpherePoint& q);
bool projectively_equal(const SpherePoint& p, const SpherePoint& q, double tol);
std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

enum class Orientation { preserving, reversing };

/// z -> (a z + b) / (c z + d), or z -> (a conj(z) + b) / (c conj(z) + d) when
/// orientation-reversing. The matrix is kept at determinant 1, so it is
/// defined up to a global sign; compare maps with `projectively_equal`.
class MobiusMap {
 public:
  using Matrix = std::array<Complex, 4>;

  /// Throws std::invalid_argument when ad - bc = 0.
  MobiusMap(Complex a, Complex b, Complex c, Complex d,
            Orientation orientation = Orientation::preserving);
  explicit MobiusMap(const Matrix& m,
                     Orientation orientation = Orientation::preserving)
      : MobiusMap(m[0], m[1], m[2], m[3], orientation) {}

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// The standard reflection z -> conj(z).
  static MobiusMap conjugation() {
    return {1.0, 0.0, 0.0, 1.0, Orientation::reversing};
  }

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  const Matrix& matrix() const { return m_; }
  Orientation orientation() const { return orientation_; }
  bool is_reversing() const { return orientation_ == Orientation::reversing; }

  Complex trace() const { return m_[0] + m_[3]; }
  MobiusMap inverse() const;

  /// Matrix with no renormalisation; used by callers that need exact
  /// control of the representative (the Keen involution).
  static MobiusMap from_normalized(const Matrix& m, Orientation orientation);

 private:
  MobiusMap() = default;
  Matrix m_{};
  Orientation orientation_ = Orientation::preserving;
};

/// f o g. The orientation flag is the parity product.
MobiusMap compose(const MobiusMap& f, const MobiusMap& g);
inline MobiusMap operator*(const MobiusMap& f, const MobiusMap& g) {
  return compose(f, g);
}

SpherePoint apply(const MobiusMap& f, const SpherePoint& p);
inline SpherePoint apply(const MobiusMap& f, Complex z) {
  return apply(f, SpherePoint::finite(z));
}

/// Distance between maps modulo the sign of the matrix; infinite when the
/// orientations differ.
double projective_distance(const MobiusMap& f, const MobiusMap& g);
bool projectively_equal(const MobiusMap& f, const MobiusMap& g, double tol);

/// f -> J f J with J(z) = conj(z): entrywise conjugation of the matrix.
MobiusMap bar_conjugate(const MobiusMap& f);

/// g f g^-1.
MobiusMap conjugate_by(const MobiusMap& g, const MobiusMap& f);

enum class MapClass {
  identity,
  parabolic,
  elliptic,
  loxodromic,
  pseudo_parabolic,
  glide_reflection,
  pseudo_elliptic,
  reflection,
  imaginary_reflection,
};

std::string to_string(MapClass c);

/// Classification of Möbius and extended Möbius maps. Throws IllConditioned
/// when tr^2 is within `tol` of 4 but not at rounding level.
MapClass classify(const MobiusMap& f, double tol);
MapClass classify(const MobiusMap& f);

struct FixedData {
  SpherePoint attracting;
  SpherePoint repelling;
  /// Derivative at the attracting fixed point; |multiplier| < 1.
  Complex multiplier;
};

/// Throws NotLoxodromic unless classify(f) == loxodromic.
FixedData fixed_data(const MobiusMap& f, double tol);
FixedData fixed_data(const MobiusMap& f);

/// The fixed circle of a reflection, as centre/radius or as a line.
struct FixedCircle {
  bool is_line = false;
  Complex center;     // circle form
  double radius = 0;  // circle form
  Complex normal;     // line form: { z : Re(conj(normal) z) = offset }
  double offset = 0;  // line form
};

/// The circle of fixed points of an orientation-reversing involution, or
/// nothing when the involution has no fixed points on the sphere.
bool reflection_circle(const MobiusMap& f, double tol, FixedCircle& out);

/// Unique orientation-preserving map with p[i] -> q[i]. Throws
/// DegenerateTriple when two points of either triple coincide within tol.
MobiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                            const std::array<SpherePoint, 3>& q, double tol);
MobiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                            const std::array<SpherePoint, 3>& q);

std::ostream& operator<<(std::ostream& os, const MobiusMap& f);

}  // namespace schottky

#include "schottky/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "schottky/config.hpp"
#include "schottky/errors.hpp"

namespace schottky {

namespace {

using Matrix = MobiusMap::Matrix;

Matrix multiply(const Matrix& x, const Matrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Matrix conj(const Matrix& m) {
  return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

double frobenius(const Matrix& m) {
  return std::sqrt(std::norm(m[0]) + std::norm(m[1]) + std::norm(m[2]) +
                   std::norm(m[3]));
}

double sign_free_distance(const Matrix& x, const Matrix& y) {
  double plus = 0.0;
  double minus = 0.0;
  for (int i = 0; i < 4; ++i) {
    plus += std::norm(x[i] - y[i]);
    minus += std::norm(x[i] + y[i]);
  }
  return std::sqrt(std::min(plus, minus));
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

// ---------------------------------------------------------------------------
// SpherePoint

SpherePoint::SpherePoint(Complex num, Complex den) {
  const double scale = std::max(std::abs(num), std::abs(den));
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw std::invalid_argument("SpherePoint: (0:0) is not a point");
  }
  num_ = num / scale;
  den_ = den / scale;
}

bool SpherePoint::is_infinity(double tol) const {
  return chordal_distance(*this, SpherePoint::infinity()) < tol;
}

Complex SpherePoint::value() const {
  if (den_ == Complex(0.0)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  return num_ / den_;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const Complex cross = p.numerator() * q.denominator() -
                        q.numerator() * p.denominator();
  const double np = std::sqrt(std::norm(p.numerator()) +
                              std::norm(p.denominator()));
  const double nq = std::sqrt(std::norm(q.numerator()) +
                              std::norm(q.denominator()));
  return 2.0 * std::abs(cross) / (np * nq);
}

bool projectively_equal(const SpherePoint& p, const SpherePoint& q,
                        double tol) {
  return chordal_distance(p, q) < tol;
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.denominator() == Complex(0.0)) return os << "inf";
  return os << p.value();
}

// ---------------------------------------------------------------------------
// MobiusMap

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d,
                     Orientation orientation)
    : orientation_(orientation) {
  const Complex det = a * d - b * c;
  if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) {
    throw std::invalid_argument("MobiusMap: singular matrix");
  }
  const Complex s = std::sqrt(det);
  m_ = {a / s, b / s, c / s, d / s};
}

MobiusMap MobiusMap::from_normalized(const Matrix& m,
                                     Orientation orientation) {
  MobiusMap f;
  f.m_ = m;
  f.orientation_ = orientation;
  return f;
}

MobiusMap MobiusMap::inverse() const {
  const Matrix inv = {m_[3], -m_[1], -m_[2], m_[0]};
  // f(z) = M conj(z)  =>  f^-1(w) = conj(M^-1) conj(w)
  return from_normalized(is_reversing() ? conj(inv) : inv, orientation_);
}

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  const Matrix inner = f.is_reversing() ? conj(g.matrix()) : g.matrix();
  const auto orientation = f.is_reversing() != g.is_reversing()
                               ? Orientation::reversing
                               : Orientation::preserving;
  const Matrix p = multiply(f.matrix(), inner);
  // The product of det-1 factors has det 1. Once |ad| + |bc| is large the
  // computed ad - bc is dominated by cancellation, so keep the product.
  const double scale = std::abs(p[0] * p[3]) + std::abs(p[1] * p[2]);
  if (scale > 1e6) return MobiusMap::from_normalized(p, orientation);
  return MobiusMap(p, orientation);
}

SpherePoint apply(const MobiusMap& f, const SpherePoint& p) {
  Complex x = p.numerator();
  Complex y = p.denominator();
  if (f.is_reversing()) {
    x = std::conj(x);
    y = std::conj(y);
  }
  return {f.a() * x + f.b() * y, f.c() * x + f.d() * y};
}

double projective_distance(const MobiusMap& f, const MobiusMap& g) {
  if (f.orientation() != g.orientation()) {
    return std::numeric_limits<double>::infinity();
  }
  return sign_free_distance(f.matrix(), g.matrix());
}

bool projectively_equal(const MobiusMap& f, const MobiusMap& g, double tol) {
  return projective_distance(f, g) < tol;
}

MobiusMap bar_conjugate(const MobiusMap& f) {
  return MobiusMap::from_normalized(conj(f.matrix()), f.orientation());
}

MobiusMap conjugate_by(const MobiusMap& g, const MobiusMap& f) {
  return compose(compose(g, f), g.inverse());
}

std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::identity: return "identity";
    case MapClass::parabolic: return "parabolic";
    case MapClass::elliptic: return "elliptic";
    case MapClass::loxodromic: return "loxodromic";
    case MapClass::pseudo_parabolic: return "pseudo-parabolic";
    case MapClass::glide_reflection: return "glide-reflection";
    case MapClass::pseudo_elliptic: return "pseudo-elliptic";
    case MapClass::reflection: return "reflection";
    case MapClass::imaginary_reflection: return "imaginary-reflection";
  }
  return "unknown";
}

namespace {

MapClass classify_preserving(const Matrix& m, double tol) {
  const Matrix id = {1.0, 0.0, 0.0, 1.0};
  if (sign_free_distance(m, id) < tol) return MapClass::identity;

  const Complex t = m[0] + m[3];
  const Complex t2 = t * t;
  const double gap = std::abs(t2 - 4.0);
  const double norm2 = std::norm(frobenius(m));
  if (gap <= 1e3 * kEps * std::max(1.0, norm2)) return MapClass::parabolic;
  if (gap < tol) {
    throw IllConditioned(
        "classify: tr^2 is within tolerance of 4; raise precision");
  }
  const bool real = std::abs(t2.imag()) <= tol * std::max(1.0, std::abs(t2));
  if (real && t2.real() >= 0.0 && t2.real() < 4.0) return MapClass::elliptic;
  return MapClass::loxodromic;
}

// Phase mu making mu * H0 Hermitian, H0 = [[c, -a], [d, -b]]; the fixed set
// of z -> (a conj z + b)/(c conj z + d) is { [conj z, 1] H0 [z, 1]^T = 0 }.
Matrix hermitian_form(const Matrix& m) {
  const Matrix h0 = {m[2], -m[0], m[3], -m[1]};
  // entry (k,l) -> (l,k) index map for a 2x2 row-major matrix
  constexpr int transpose[4] = {0, 2, 1, 3};
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(h0[i]) > std::abs(h0[best])) best = i;
  }
  const Complex ratio = std::conj(h0[transpose[best]]) / h0[best];
  const Complex mu = std::polar(1.0, std::arg(ratio) / 2.0);
  return {mu * h0[0], mu * h0[1], mu * h0[2], mu * h0[3]};
}

}  // namespace

bool reflection_circle(const MobiusMap& f, double tol, FixedCircle& out) {
  if (!f.is_reversing()) return false;
  const Matrix h = hermitian_form(f.matrix());
  const double a = h[0].real();
  const Complex b = h[1];
  const double d = h[3].real();
  const double disc = std::norm(b) - a * d;
  if (disc <= tol) return false;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(d)});
  if (std::abs(a) > 1e-12 * scale) {
    out.is_line = false;
    out.center = -b / a;
    out.radius = std::sqrt(disc) / std::abs(a);
  } else {
    // 2 Re(conj(b) z) + d = 0
    out.is_line = true;
    out.normal = b / std::abs(b);
    out.offset = -d / (2.0 * std::abs(b));
  }
  return true;
}

MapClass classify(const MobiusMap& f, double tol) {
  if (!f.is_reversing()) return classify_preserving(f.matrix(), tol);

  const MobiusMap square = compose(f, f);
  const Matrix id = {1.0, 0.0, 0.0, 1.0};
  if (sign_free_distance(square.matrix(), id) < tol) {
    FixedCircle circle;
    if (!reflection_circle(f, tol, circle)) {
      return MapClass::imaginary_reflection;
    }
    // three samples on the candidate circle must be fixed
    for (int k = 0; k < 3; ++k) {
      Complex z;
      if (circle.is_line) {
        const Complex foot = circle.offset * circle.normal;
        z = foot + Complex(0.0, k - 1.0) * circle.normal;
      } else {
        z = circle.center + std::polar(circle.radius, 2.0 * M_PI * k / 3.0);
      }
      const SpherePoint p = SpherePoint::finite(z);
      if (chordal_distance(apply(f, p), p) > std::sqrt(tol)) {
        return MapClass::imaginary_reflection;
      }
    }
    return MapClass::reflection;
  }
  switch (classify_preserving(square.matrix(), tol)) {
    case MapClass::parabolic: return MapClass::pseudo_parabolic;
    case MapClass::elliptic: return MapClass::pseudo_elliptic;
    case MapClass::loxodromic: return MapClass::glide_reflection;
    default: break;
  }
  return MapClass::reflection;  // unreachable: square was not the identity
}

MapClass classify(const MobiusMap& f) {
  return classify(f, default_tolerance());
}

FixedData fixed_data(const MobiusMap& f, double tol) {
  if (f.is_reversing() || classify(f, tol) != MapClass::loxodromic) {
    throw NotLoxodromic("fixed_data: map is not loxodromic");
  }
  const Complex t = f.trace();
  Complex root = std::sqrt(t * t - 4.0);
  Complex big = (t + root) / 2.0;
  Complex small = (t - root) / 2.0;
  if (std::abs(big) < std::abs(small)) std::swap(big, small);

  auto eigenvector = [&](Complex lambda) {
    const Complex u0 = f.b();
    const Complex u1 = lambda - f.a();
    const Complex v0 = lambda - f.d();
    const Complex v1 = f.c();
    if (std::norm(u0) + std::norm(u1) >= std::norm(v0) + std::norm(v1)) {
      return SpherePoint(u0, u1);
    }
    return SpherePoint(v0, v1);
  };
  return {eigenvector(big), eigenvector(small), small / big};
}

FixedData fixed_data(const MobiusMap& f) {
  return fixed_data(f, default_tolerance());
}

namespace {

// det[v, p] for homogeneous v, p
Complex bracket(const SpherePoint& v, const SpherePoint& p) {
  return v.numerator() * p.denominator() - v.denominator() * p.numerator();
}

// The map sending p0 -> 0, p1 -> inf, p2 -> 1.
Matrix standard_frame(const std::array<SpherePoint, 3>& p) {
  const Complex l0 = bracket(p[2], p[0]);
  const Complex l1 = bracket(p[2], p[1]);
  return {l1 * p[0].denominator(), -l1 * p[0].numerator(),
          l0 * p[1].denominator(), -l0 * p[1].numerator()};
}

void check_distinct(const std::array<SpherePoint, 3>& p, double tol,
                    const char* which) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (chordal_distance(p[i], p[j]) < tol) {
        throw DegenerateTriple(std::string("from_three_points: ") + which +
                               " points collide");
      }
    }
  }
}

}  // namespace

MobiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                            const std::array<SpherePoint, 3>& q, double tol) {
  check_distinct(p, tol, "source");
  check_distinct(q, tol, "target");
  const MobiusMap sp(standard_frame(p));
  const MobiusMap sq(standard_frame(q));
  return compose(sq.inverse(), sp);
}

MobiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                            const std::array<SpherePoint, 3>& q) {
  return from_three_points(p, q, default_tolerance());
}

std::ostream& operator<<(std::ostream& os, const MobiusMap& f) {
  os << (f.is_reversing() ? "reversing" : "preserving") << " [" << f.a()
     << ", " << f.b() << "; " << f.c() << ", " << f.d() << "]";
  return os;
}

}  // namespace schottky

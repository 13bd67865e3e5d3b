#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "schottky/freegroup.hpp"
#include "schottky/mobius.hpp"

namespace schottky {

/// A circle |z - center| = radius, or a line { z : Re(conj(normal) z) =
/// offset } with |normal| = 1.
struct Circle {
  bool is_line = false;
  Complex center;
  double radius = 1.0;
  Complex normal = 1.0;
  double offset = 0.0;

  static Circle disc(Complex center, double radius);
  static Circle line(Complex normal, double offset);

  /// Three distinct points of the circle (for a line, three finite points).
  std::array<Complex, 3> sample() const;
};

/// Circumcircle of three points; a line when they are collinear within
/// `tol` or when one of them is infinity.
Circle circle_through(const std::array<SpherePoint, 3>& p, double tol);

Circle image_circle(const MobiusMap& f, const Circle& c);

/// |c1 - c2| + |r1 - r2| for circles; for two lines the analogous bound on
/// (normal, offset) up to orientation; infinite for a circle against a line.
double circle_distance(const Circle& x, const Circle& y);

struct PairedCircles {
  Circle c;
  Circle c_prime;
  MobiusMap map;
};

using CirclePairing = std::vector<PairedCircles>;

/// The loxodromic sending C onto C' with the exterior of C onto the interior
/// of C'. Three counter-clockwise points of C go to three clockwise points of
/// C'. Both circles must be in disc form.
MobiusMap pairing_map(const Circle& c, const Circle& c_prime);

/// Pairs each (C_j, C'_j) with pairing_map.
CirclePairing make_pairing(
    const std::vector<std::pair<Circle, Circle>>& circles);

struct PairReport {
  /// Smallest gap between this pair's closed discs and any other disc.
  double margin = 0.0;
  /// circle_distance(image_circle(A_j, C_j), C'_j).
  double image_distance = 0.0;
  bool exterior_to_interior = false;
  bool loxodromic = false;
};

struct ValidationReport {
  std::vector<PairReport> pairs;
  bool valid = false;
  int rank() const { return static_cast<int>(pairs.size()); }
};

/// Failures are reported, never thrown.
ValidationReport validate_pairing(const CirclePairing& p, double tol);

/// An ordered tuple of loxodromic generators, optionally with a circle
/// pairing witnessing that the group is classical Schottky.
class MarkedSchottky {
 public:
  /// Throws NotLoxodromic for a non-loxodromic generator and
  /// PreconditionFailed when a witness is given that does not validate or
  /// does not match the generators.
  explicit MarkedSchottky(std::vector<MobiusMap> generators,
                          std::optional<CirclePairing> witness = std::nullopt);

  int rank() const { return static_cast<int>(generators_.size()); }
  const std::vector<MobiusMap>& generators() const { return generators_; }
  const MobiusMap& generator(int j) const { return generators_.at(j - 1); }
  const std::optional<CirclePairing>& witness() const { return witness_; }

 private:
  std::vector<MobiusMap> generators_;
  std::optional<CirclePairing> witness_;
};

/// M A_j M^-1 for every generator; the witness is dropped.
MarkedSchottky conjugate_marked(const MobiusMap& m, const MarkedSchottky& g);

struct Normalized {
  MarkedSchottky group;
  MobiusMap conjugator;
};

/// Conjugates so that A_1, A_2 and A_2 A_1 attract to infinity, 0 and 1.
/// Throws DegenerateMarking for rank < 2 or colliding attracting points.
Normalized normalize(const MarkedSchottky& m, double tol);
Normalized normalize(const MarkedSchottky& m);

/// (a_3..a_g, r_1..r_g, s_2..s_g) of the normalized tuple: attracting
/// points of A_j, repelling points of A_j and of A_j A_1. Throws
/// DegenerateMarking when a coordinate is within tol of 0, 1 or infinity.
std::vector<Complex> zeta(const MarkedSchottky& m, double tol);
std::vector<Complex> zeta(const MarkedSchottky& m);

/// Substitutes generators for letters, composing left to right.
MobiusMap evaluate_word(const MarkedSchottky& m, const FreeWord& w);

/// For every reduced word w of length 1..max_len (depth first, letters
/// ordered x1 < x1^-1 < x2 < ...), the image under w of the attracting point
/// of its leading letter, deduplicated within tol. Throws ExplosionGuard
/// when more than point_cap points would be emitted.
std::vector<SpherePoint> limit_points(const MarkedSchottky& m, int max_len,
                                      double tol,
                                      std::size_t point_cap = 1'000'000);

/// Rank-g classical Schottky group from 2g circles on a jittered ring,
/// circle k paired with circle k + g.
MarkedSchottky random_classical_group(std::mt19937_64& rng, int g);

}  // namespace schottky

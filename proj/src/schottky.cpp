#include "schottky/schottky.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "schottky/config.hpp"
#include "schottky/errors.hpp"

namespace schottky {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI(0.0, 1.0);
}  // namespace

// ---------------------------------------------------------------------------
// Circles

Circle Circle::disc(Complex center, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("Circle: radius must be positive");
  }
  Circle c;
  c.center = center;
  c.radius = radius;
  return c;
}

Circle Circle::line(Complex normal, double offset) {
  if (std::abs(normal) == 0.0) {
    throw std::invalid_argument("Circle: line normal must be nonzero");
  }
  Circle c;
  c.is_line = true;
  c.normal = normal / std::abs(normal);
  c.offset = offset / std::abs(normal);
  return c;
}

std::array<Complex, 3> Circle::sample() const {
  if (is_line) {
    const Complex foot = offset * normal;
    const Complex along = kI * normal;
    return {foot - along, foot, foot + along};
  }
  return {center + radius, center + radius * kI, center - radius};
}

namespace {
Circle line_through(Complex p, Complex q) {
  const Complex u = (q - p) / std::abs(q - p);
  const Complex n = kI * u;
  return Circle::line(n, (std::conj(n) * p).real());
}
}  // namespace

Circle circle_through(const std::array<SpherePoint, 3>& p, double tol) {
  for (int i = 0; i < 3; ++i) {
    if (p[i].is_infinity(tol)) {
      return line_through(p[(i + 1) % 3].value(), p[(i + 2) % 3].value());
    }
  }
  const Complex z1 = p[0].value(), z2 = p[1].value(), z3 = p[2].value();
  const double x1 = z1.real(), y1 = z1.imag(), x2 = z2.real(),
               y2 = z2.imag(), x3 = z3.real(), y3 = z3.imag();
  const double d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
  const double scale =
      std::max({std::norm(z1 - z2), std::norm(z2 - z3), std::norm(z3 - z1)});
  if (std::abs(d) <= tol * scale) {
    // collinear: use the farthest pair
    if (std::norm(z1 - z2) == scale) return line_through(z1, z2);
    if (std::norm(z2 - z3) == scale) return line_through(z2, z3);
    return line_through(z3, z1);
  }
  const double s1 = std::norm(z1), s2 = std::norm(z2), s3 = std::norm(z3);
  const double ux = (s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / d;
  const double uy = (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / d;
  const Complex center(ux, uy);
  return Circle::disc(center, std::abs(z1 - center));
}

Circle image_circle(const MobiusMap& f, const Circle& c) {
  const auto s = c.sample();
  return circle_through({apply(f, s[0]), apply(f, s[1]), apply(f, s[2])},
                        1e-12);
}

double circle_distance(const Circle& x, const Circle& y) {
  if (x.is_line != y.is_line) return kInf;
  if (!x.is_line) {
    return std::abs(x.center - y.center) + std::abs(x.radius - y.radius);
  }
  const double same =
      std::abs(x.normal - y.normal) + std::abs(x.offset - y.offset);
  const double flipped =
      std::abs(x.normal + y.normal) + std::abs(x.offset + y.offset);
  return std::min(same, flipped);
}

// ---------------------------------------------------------------------------
// Pairings

MobiusMap pairing_map(const Circle& c, const Circle& c_prime) {
  if (c.is_line || c_prime.is_line) {
    throw PreconditionFailed("pairing_map: circles must be in disc form");
  }
  const std::array<SpherePoint, 3> p = {
      SpherePoint::finite(c.center + c.radius),
      SpherePoint::finite(c.center + c.radius * kI),
      SpherePoint::finite(c.center - c.radius)};
  const std::array<SpherePoint, 3> q = {
      SpherePoint::finite(c_prime.center + c_prime.radius),
      SpherePoint::finite(c_prime.center - c_prime.radius * kI),
      SpherePoint::finite(c_prime.center - c_prime.radius)};
  return from_three_points(p, q);
}

CirclePairing make_pairing(
    const std::vector<std::pair<Circle, Circle>>& circles) {
  CirclePairing out;
  for (const auto& [c, cp] : circles) out.push_back({c, cp, pairing_map(c, cp)});
  return out;
}

namespace {
bool strictly_inside(const SpherePoint& p, const Circle& c) {
  if (c.is_line || p.is_infinity(1e-15)) return false;
  return std::abs(p.value() - c.center) < c.radius;
}
}  // namespace

ValidationReport validate_pairing(const CirclePairing& p, double tol) {
  ValidationReport report;
  std::vector<const Circle*> all;
  for (const auto& pair : p) {
    all.push_back(&pair.c);
    all.push_back(&pair.c_prime);
  }
  auto gap = [](const Circle& x, const Circle& y) {
    if (x.is_line || y.is_line) return -kInf;
    return std::abs(x.center - y.center) - x.radius - y.radius;
  };

  report.valid = !p.empty();
  for (std::size_t j = 0; j < p.size(); ++j) {
    PairReport r;
    r.margin = kInf;
    for (const Circle* own : {&p[j].c, &p[j].c_prime}) {
      for (const Circle* other : all) {
        if (other != own) r.margin = std::min(r.margin, gap(*own, *other));
      }
    }
    r.image_distance =
        circle_distance(image_circle(p[j].map, p[j].c), p[j].c_prime);
    if (!p[j].c.is_line && !p[j].c_prime.is_line) {
      const auto far = apply(p[j].map, SpherePoint::infinity());
      const auto near = apply(p[j].map, p[j].c.center + 3.0 * p[j].c.radius);
      r.exterior_to_interior = strictly_inside(far, p[j].c_prime) &&
                               strictly_inside(near, p[j].c_prime);
    }
    try {
      r.loxodromic = classify(p[j].map, tol) == MapClass::loxodromic;
    } catch (const IllConditioned&) {
      r.loxodromic = false;
    }
    report.valid = report.valid && r.margin > 0.0 && r.image_distance < tol &&
                   r.exterior_to_interior && r.loxodromic;
    report.pairs.push_back(r);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Marked groups

MarkedSchottky::MarkedSchottky(std::vector<MobiusMap> generators,
                               std::optional<CirclePairing> witness)
    : generators_(std::move(generators)), witness_(std::move(witness)) {
  if (generators_.empty()) {
    throw PreconditionFailed("marked Schottky group needs rank >= 1");
  }
  for (const auto& a : generators_) {
    if (a.is_reversing() || classify(a) != MapClass::loxodromic) {
      throw NotLoxodromic("marked Schottky generators must be loxodromic");
    }
  }
  if (witness_) {
    const double tol = std::max(default_tolerance(), 1e-9);
    if (witness_->size() != generators_.size()) {
      throw PreconditionFailed("witness pairing has the wrong rank");
    }
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (!projectively_equal((*witness_)[j].map, generators_[j], tol)) {
        throw PreconditionFailed("witness map differs from generator " +
                                 std::to_string(j + 1));
      }
    }
    if (!validate_pairing(*witness_, tol).valid) {
      throw PreconditionFailed("witness pairing does not validate");
    }
  }
}

MarkedSchottky conjugate_marked(const MobiusMap& m, const MarkedSchottky& g) {
  std::vector<MobiusMap> out;
  for (const auto& a : g.generators()) out.push_back(conjugate_by(m, a));
  return MarkedSchottky(std::move(out));
}

Normalized normalize(const MarkedSchottky& m, double tol) {
  if (m.rank() < 2) throw DegenerateMarking("normalize needs rank >= 2");
  const auto& a1 = m.generator(1);
  const auto& a2 = m.generator(2);
  const std::array<SpherePoint, 3> from = {
      fixed_data(a1, tol).attracting, fixed_data(a2, tol).attracting,
      fixed_data(compose(a2, a1), tol).attracting};
  const std::array<SpherePoint, 3> to = {
      SpherePoint::infinity(), SpherePoint::finite(0.0),
      SpherePoint::finite(1.0)};
  try {
    const MobiusMap conj = from_three_points(from, to, tol);
    return {conjugate_marked(conj, m), conj};
  } catch (const DegenerateTriple&) {
    throw DegenerateMarking(
        "attracting points of A1, A2, A2A1 are not distinct");
  }
}

Normalized normalize(const MarkedSchottky& m) {
  return normalize(m, default_tolerance());
}

std::vector<Complex> zeta(const MarkedSchottky& m, double tol) {
  const auto n = normalize(m, tol).group;
  const int g = n.rank();
  std::vector<SpherePoint> points;
  for (int j = 3; j <= g; ++j) {
    points.push_back(fixed_data(n.generator(j), tol).attracting);
  }
  for (int j = 1; j <= g; ++j) {
    points.push_back(fixed_data(n.generator(j), tol).repelling);
  }
  for (int j = 2; j <= g; ++j) {
    points.push_back(
        fixed_data(compose(n.generator(j), n.generator(1)), tol).repelling);
  }
  std::vector<Complex> out;
  for (const auto& p : points) {
    if (p.is_infinity(tol)) {
      throw DegenerateMarking("zeta coordinate at infinity");
    }
    const Complex z = p.value();
    if (std::abs(z) < tol || std::abs(z - 1.0) < tol) {
      throw DegenerateMarking("zeta coordinate at 0 or 1");
    }
    out.push_back(z);
  }
  return out;
}

std::vector<Complex> zeta(const MarkedSchottky& m) {
  return zeta(m, default_tolerance());
}

MobiusMap evaluate_word(const MarkedSchottky& m, const FreeWord& w) {
  MobiusMap out = MobiusMap::identity();
  for (int l : w.letters()) {
    if (std::abs(l) > m.rank()) {
      throw RankMismatch("word uses x" + std::to_string(std::abs(l)) +
                         " but the group has rank " +
                         std::to_string(m.rank()));
    }
    const auto& a = m.generator(std::abs(l));
    out = out * (l > 0 ? a : a.inverse());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limit set sampling

namespace {

struct Cell {
  std::int64_t x, y, z;
  bool operator==(const Cell&) const = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    std::size_t h = std::hash<std::int64_t>()(c.x);
    h = h * 1000003u ^ std::hash<std::int64_t>()(c.y);
    return h * 1000003u ^ std::hash<std::int64_t>()(c.z);
  }
};

std::array<double, 3> on_sphere(const SpherePoint& p) {
  const Complex u = p.numerator(), v = p.denominator();
  const double n = std::norm(u) + std::norm(v);
  const Complex w = u * std::conj(v);
  return {2.0 * w.real() / n, 2.0 * w.imag() / n,
          (std::norm(u) - std::norm(v)) / n};
}

class PointSet {
 public:
  explicit PointSet(double tol) : cell_(std::max(tol, 1e-15)) {}

  void insert(const SpherePoint& p) {
    const auto s = on_sphere(p);
    const Cell c = cell_of(s);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = grid_.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid_.end()) continue;
          for (std::size_t idx : it->second) {
            if (chordal_distance(points_[idx], p) < cell_) return;
          }
        }
    grid_[c].push_back(points_.size());
    points_.push_back(p);
  }

  std::vector<SpherePoint> take() { return std::move(points_); }

 private:
  Cell cell_of(const std::array<double, 3>& s) const {
    return {static_cast<std::int64_t>(std::floor(s[0] / cell_)),
            static_cast<std::int64_t>(std::floor(s[1] / cell_)),
            static_cast<std::int64_t>(std::floor(s[2] / cell_))};
  }

  double cell_;
  std::vector<SpherePoint> points_;
  std::unordered_map<Cell, std::vector<std::size_t>, CellHash> grid_;
};

}  // namespace

std::vector<SpherePoint> limit_points(const MarkedSchottky& m, int max_len,
                                      double tol, std::size_t point_cap) {
  if (max_len < 1) throw PreconditionFailed("limit_points: max_len >= 1");
  const int g = m.rank();
  // words of length 1..max_len: 2g (2g-1)^(k-1)
  double words = 0.0, layer = 2.0 * g;
  for (int k = 1; k <= max_len; ++k) {
    words += layer;
    layer *= 2.0 * g - 1.0;
  }
  if (words > static_cast<double>(point_cap)) {
    throw ExplosionGuard("limit_points: " + std::to_string(words) +
                         " words exceed the point cap");
  }

  // letters in the order x1, x1^-1, x2, ...
  std::vector<int> order;
  std::vector<MobiusMap> maps;
  std::vector<SpherePoint> attractors;
  for (int j = 1; j <= g; ++j) {
    const auto fd = fixed_data(m.generator(j));
    order.insert(order.end(), {j, -j});
    maps.push_back(m.generator(j));
    maps.push_back(m.generator(j).inverse());
    attractors.push_back(fd.attracting);
    attractors.push_back(fd.repelling);
  }

  PointSet points(tol);
  struct Frame {
    MobiusMap map;
    int last;  // index into order
    int depth;
  };
  for (std::size_t first = 0; first < order.size(); ++first) {
    const SpherePoint& seed = attractors[first];
    std::vector<Frame> stack{{maps[first], static_cast<int>(first), 1}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      points.insert(apply(f.map, seed));
      if (f.depth == max_len) continue;
      // push in reverse so that the smallest letter is expanded first
      for (int next = static_cast<int>(order.size()) - 1; next >= 0; --next) {
        if (order[next] == -order[f.last]) continue;
        stack.push_back({f.map * maps[next], next, f.depth + 1});
      }
    }
  }
  return points.take();
}

MarkedSchottky random_classical_group(std::mt19937_64& rng, int g) {
  if (g < 1) throw PreconditionFailed("random_classical_group: g >= 1");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double step = std::numbers::pi / g;  // 2g circles around the ring
  const double safe = std::sin(0.35 * step);
  for (;;) {
    std::vector<Circle> circles;
    for (int k = 0; k < 2 * g; ++k) {
      const double angle = (k + 0.15 * unit(rng)) * step;
      const double ring = 1.0 + 0.05 * unit(rng);
      const double radius = (0.6 + 0.2 * unit(rng)) * 0.9 * safe;
      circles.push_back(Circle::disc(std::polar(ring, angle), radius));
    }
    std::vector<std::pair<Circle, Circle>> pairs;
    for (int k = 0; k < g; ++k) pairs.emplace_back(circles[k], circles[k + g]);
    auto pairing = make_pairing(pairs);
    if (!validate_pairing(pairing, 1e-9).valid) continue;
    std::vector<MobiusMap> gens;
    for (const auto& p : pairing) gens.push_back(p.map);
    return MarkedSchottky(std::move(gens), std::move(pairing));
  }
}

}  // namespace schottky

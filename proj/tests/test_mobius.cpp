#include <cmath>
#include <random>

#include "doctest.h"
#include "schottky/errors.hpp"
#include "schottky/mobius.hpp"
#include "test_support.hpp"

using namespace schottky;
using schottky::testing::random_map;
using schottky::testing::random_point;

namespace {
constexpr double kTol = 1e-9;
const Complex I(0.0, 1.0);

MobiusMap reversing(Complex a, Complex b, Complex c, Complex d) {
  return MobiusMap(a, b, c, d, Orientation::reversing);
}
}  // namespace

TEST_CASE("compose: tau2 o tau1 is z -> 4z") {
  const auto tau1 = reversing(0, 1, 1, 0);  // 1/conj(z)
  const auto tau2 = reversing(0, 4, 1, 0);  // 4/conj(z)
  const auto a = compose(tau2, tau1);
  CHECK_FALSE(a.is_reversing());
  CHECK(projectively_equal(a, MobiusMap(4, 0, 0, 1), kTol));
}

TEST_CASE("compose: inverse law and direct substitution") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto o = i % 2 ? Orientation::reversing : Orientation::preserving;
    const auto f = random_map(rng, o);
    CHECK(projectively_equal(compose(f, f.inverse()), MobiusMap::identity(),
                             1e-8));
  }
  const auto got = compose(MobiusMap(2, 0, 0, 1), MobiusMap(1, 1, 0, 1));
  CHECK(projectively_equal(got, MobiusMap(2, 2, 0, 1), kTol));
}

TEST_CASE("apply") {
  CHECK(apply(MobiusMap(4, 0, 0, 1), SpherePoint::infinity()).is_infinity(kTol));
  const auto tau1 = reversing(0, 1, 1, 0);
  CHECK(std::abs(apply(tau1, Complex(2.0)).value() - 0.5) < kTol);
  // conj enters: 1/conj(i) = i
  CHECK(std::abs(apply(tau1, I).value() - I) < kTol);
  CHECK(apply(MobiusMap(0, 1, 1, 0), Complex(0.0)).is_infinity(kTol));
}

TEST_CASE("classify: named examples") {
  CHECK(classify(reversing(0, 1, 1, 0), kTol) == MapClass::reflection);
  CHECK(classify(reversing(0, -1, 1, 0), kTol) ==
        MapClass::imaginary_reflection);
  CHECK(classify(MobiusMap(2, 0, 0, 1), kTol) == MapClass::loxodromic);
  CHECK(classify(MobiusMap::identity(), kTol) == MapClass::identity);
  CHECK(classify(MobiusMap(1, 1, 0, 1), kTol) == MapClass::parabolic);
  CHECK(classify(MobiusMap(I, 0, 0, 1), kTol) == MapClass::elliptic);
  // reflection in a line, reflection in |z-5| = 1
  CHECK(classify(MobiusMap::conjugation(), kTol) == MapClass::reflection);
  CHECK(classify(reversing(5, -24, 1, -5), kTol) == MapClass::reflection);
  // z -> 4 conj(z): square is z -> 16z
  CHECK(classify(reversing(4, 0, 0, 1), kTol) == MapClass::glide_reflection);
  // z -> conj(z) + 1: square is a translation
  CHECK(classify(reversing(1, 1, 0, 1), kTol) == MapClass::pseudo_parabolic);
  // z -> i conj(z): square is z -> -i z ... a rotation
  CHECK(classify(reversing(std::polar(1.0, 0.7), 0, 0, 1), kTol) ==
        MapClass::reflection);
  CHECK(classify(reversing(std::polar(2.0, 0.7), 0, 0, 1), kTol) ==
        MapClass::glide_reflection);
}

TEST_CASE("classify: ill-conditioned near-parabolic") {
  const double t = 2.0 + 1e-12;  // tr^2 - 4 ~ 4e-12
  const double s = std::sqrt(t * t / 4.0 - 1.0);
  const MobiusMap f(t / 2 + s, 0, 0, t / 2 - s);
  CHECK_THROWS_AS(classify(f, 1e-9), IllConditioned);
}

TEST_CASE("classify is conjugation invariant") {
  std::mt19937_64 rng(11);
  const MobiusMap samples[] = {
      reversing(0, 1, 1, 0),  reversing(0, -1, 1, 0), MobiusMap(2, 0, 0, 1),
      MobiusMap(I, 0, 0, 1), reversing(4, 0, 0, 1),
      reversing(std::polar(3.0, 0.4), 1, 0, 1)};
  for (const auto& f : samples) {
    const auto expected = classify(f, kTol);
    for (int i = 0; i < 100; ++i) {
      const auto g = random_map(rng, i % 3 == 0 ? Orientation::reversing
                                                 : Orientation::preserving);
      CHECK(classify(conjugate_by(g, f), 1e-7) == expected);
    }
  }
}

TEST_CASE("reversing classes: squares") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_map(rng, Orientation::reversing);
    MapClass c;
    try {
      c = classify(f, kTol);
    } catch (const IllConditioned&) {
      continue;
    }
    const auto sq = compose(f, f);
    if (c == MapClass::glide_reflection) {
      CHECK(classify(sq, kTol) == MapClass::loxodromic);
    }
    if (c == MapClass::reflection || c == MapClass::imaginary_reflection) {
      CHECK(projectively_equal(sq, MobiusMap::identity(), 1e-8));
    }
  }
}

TEST_CASE("fixed_data: examples") {
  const auto big = fixed_data(MobiusMap(4, 0, 0, 1), kTol);
  CHECK(big.attracting.is_infinity(kTol));
  CHECK(std::abs(big.repelling.value()) < kTol);
  CHECK(std::abs(big.multiplier - 0.25) < kTol);

  const auto half = fixed_data(MobiusMap(1, 0, 0, 2), kTol);
  CHECK(std::abs(half.attracting.value()) < kTol);
  CHECK(half.repelling.is_infinity(kTol));
  CHECK(std::abs(half.multiplier - 0.5) < kTol);

  // (2z+1)/(z+1): oracle from the quadratic c z^2 + (d-a) z - b = z^2 - z - 1
  // and the derivative 1/(cz+d)^2 at each root.
  const double r1 = (1 + std::sqrt(5.0)) / 2, r2 = (1 - std::sqrt(5.0)) / 2;
  const double d1 = 1 / ((r1 + 1) * (r1 + 1)), d2 = 1 / ((r2 + 1) * (r2 + 1));
  REQUIRE(d1 < 1.0);
  REQUIRE(d2 > 1.0);
  const auto golden = fixed_data(MobiusMap(2, 1, 1, 1), kTol);
  CHECK(std::abs(golden.attracting.value() - r1) < kTol);
  CHECK(std::abs(golden.repelling.value() - r2) < kTol);
  CHECK(std::abs(golden.multiplier - d1) < kTol);

  CHECK_THROWS_AS(fixed_data(MobiusMap(1, 1, 0, 1), kTol), NotLoxodromic);
  CHECK_THROWS_AS(fixed_data(reversing(0, 1, 1, 0), kTol), NotLoxodromic);
}

TEST_CASE("fixed_data: round trip and orbit convergence") {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 300) {
    const auto f = random_map(rng);
    if (classify(f, 1e-6) != MapClass::loxodromic) continue;
    const auto fd = fixed_data(f, kTol);
    if (std::abs(fd.multiplier) > 0.9) continue;
    ++checked;
    CHECK(chordal_distance(apply(f, fd.attracting), fd.attracting) < 1e-8);
    CHECK(chordal_distance(apply(f, fd.repelling), fd.repelling) < 1e-8);
    auto p = random_point(rng);
    if (chordal_distance(p, fd.repelling) < 1e-3) continue;
    for (int k = 0; k < 400; ++k) p = apply(f, p);
    CHECK(chordal_distance(p, fd.attracting) < 1e-6);
  }
}

TEST_CASE("from_three_points") {
  const auto inf = SpherePoint::infinity();
  const auto zero = SpherePoint::finite(0.0);
  const auto one = SpherePoint::finite(1.0);
  CHECK(projectively_equal(from_three_points({inf, zero, one}, {inf, zero, one}),
                           MobiusMap::identity(), kTol));
  CHECK(projectively_equal(from_three_points({inf, zero, one}, {zero, inf, one}),
                           MobiusMap(0, 1, 1, 0), kTol));

  // |r| = 1: (inf, 0, 1) -> (conj r, 1, inf) is (z - r)/(rz - r), r -> 0
  const Complex r = std::polar(1.0, 2.1);
  const auto m = from_three_points(
      {inf, zero, one},
      {SpherePoint::finite(std::conj(r)), one, inf});
  CHECK(projectively_equal(m, MobiusMap(1, -r, r, -r), kTol));
  CHECK(std::abs(apply(m, r).value()) < kTol);

  CHECK_THROWS_AS(from_three_points({zero, zero, one}, {inf, zero, one}),
                  DegenerateTriple);
  CHECK_THROWS_AS(from_three_points({inf, zero, one}, {one, zero, one}),
                  DegenerateTriple);
}

TEST_CASE("from_three_points reproduces targets") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    std::array<SpherePoint, 3> p{random_point(rng), random_point(rng),
                                 random_point(rng)};
    std::array<SpherePoint, 3> q{random_point(rng), random_point(rng),
                                 random_point(rng)};
    if (i % 5 == 0) q[i % 3] = SpherePoint::infinity();
    const auto m = from_three_points(p, q);
    for (int k = 0; k < 3; ++k) {
      CHECK(chordal_distance(apply(m, p[k]), q[k]) < 1e-8);
    }
  }
}

TEST_CASE("bar_conjugate") {
  const MobiusMap real(2, 1, 1, 1);
  CHECK(projectively_equal(bar_conjugate(real), real, kTol));
  CHECK(projectively_equal(bar_conjugate(MobiusMap(I, 0, 0, 1)),
                           MobiusMap(-I, 0, 0, 1), kTol));
  std::mt19937_64 rng(1);
  const auto f = random_map(rng, Orientation::reversing);
  CHECK(projectively_equal(bar_conjugate(bar_conjugate(f)), f, 0.0 + 1e-15));
  // agrees with J f J as a composition
  const auto g = random_map(rng);
  const auto j = MobiusMap::conjugation();
  CHECK(projectively_equal(bar_conjugate(g), compose(compose(j, g), j), 1e-12));
}

TEST_CASE("compose: long products keep their fixed points") {
  const MobiusMap f(2.0, 1.0, 1.0, 1.0);
  const auto fd = fixed_data(f);
  MobiusMap p = MobiusMap::identity();
  for (int i = 0; i < 60; ++i) p = compose(p, f);
  CHECK(projectively_equal(apply(p, fd.attracting), fd.attracting, 1e-9));
  CHECK(projectively_equal(apply(p, SpherePoint::finite(0.3)), fd.attracting,
                           1e-9));
  // short enough that unwinding is well conditioned
  MobiusMap q = MobiusMap::identity();
  for (int i = 0; i < 6; ++i) q = compose(q, f);
  for (int i = 0; i < 6; ++i) q = compose(q, f.inverse());
  CHECK(projectively_equal(q, MobiusMap::identity(), 1e-6));
}

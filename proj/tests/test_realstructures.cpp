#include <random>

#include "doctest.h"
#include "schottky/errors.hpp"
#include "schottky/realstructures.hpp"
#include "test_support.hpp"

using namespace schottky;

namespace {
constexpr double kTol = 1e-8;
const Complex I(0.0, 1.0);

FreeWord w(const char* text) { return FreeWord::parse(text); }
FgAuto aut(std::initializer_list<const char*> images) {
  std::vector<FreeWord> words;
  for (const char* t : images) words.push_back(w(t));
  return FgAuto(static_cast<int>(words.size()), words);
}

// Hyperbolic real map with isometric circles |z -+ p| = 1 moved by x -> x+s.
MobiusMap real_hyperbolic(double p, double s) {
  const MobiusMap base(p, p * p - 1.0, 1.0, p);
  const MobiusMap shift(1.0, s, 0.0, 1.0);
  return compose(shift, compose(base, shift.inverse()));
}

bool same_tuple(const MarkedSchottky& x, const MarkedSchottky& y, double tol) {
  if (x.rank() != y.rank()) return false;
  for (int j = 1; j <= x.rank(); ++j) {
    if (!projectively_equal(x.generator(j), y.generator(j), tol)) return false;
  }
  return true;
}

// Independent check of a witness: every conjugation equation, entrywise.
double witness_defect(const MobiusMap& m, const MarkedSchottky& a,
                      const MarkedSchottky& b) {
  double worst = 0.0;
  for (int j = 1; j <= a.rank(); ++j) {
    const auto lhs = compose(m, a.generator(j));
    const auto rhs = compose(b.generator(j), m);
    worst = std::max(worst, projective_distance(lhs, rhs));
  }
  return worst;
}

bool equal_mod_inner_rho0(const FgAuto& p, const FgAuto& q) {
  const auto d = q.inverse() * p;
  return is_inner(d) || is_inner(aut({"x1^-1", "x2^-1"}) * d);
}

const std::vector<std::pair<const char*, Genus2Tag>> kGenus2Table = {
    {"(3,0,0,0,0;)", Genus2Tag::J2},   {"(2,1,0,0,0;)", Genus2Tag::J2},
    {"(1,2,0,0,0;)", Genus2Tag::J2},   {"(0,3,0,0,0;)", Genus2Tag::J2},
    {"(0,0,0,0,1;2)", Genus2Tag::J2},  {"(1,0,1,0,0;)", Genus2Tag::rho1},
    {"(1,0,0,1,0;)", Genus2Tag::rho1}, {"(0,1,0,1,0;)", Genus2Tag::rho1},
    {"(1,0,0,0,1;1)", Genus2Tag::rho2}, {"(0,1,0,0,1;1)", Genus2Tag::rho2},
};
}  // namespace

TEST_CASE("canonical_J") {
  const MarkedSchottky real({real_hyperbolic(3, 0), real_hyperbolic(3, 20)});
  CHECK(same_tuple(canonical_J(real), real, 1e-12));
  std::mt19937_64 rng(1);
  const auto m = random_classical_group(rng, 3);
  CHECK(same_tuple(canonical_J(canonical_J(m)), m, 1e-12));
  const MobiusMap lox(2.0 * std::exp(I * 0.3), 0, 0, 0.5 * std::exp(-I * 0.3));
  const auto img = canonical_J(MarkedSchottky({lox})).generator(1);
  CHECK(std::abs(fixed_data(img).multiplier -
                 std::conj(fixed_data(lox).multiplier)) < 1e-12);
}

TEST_CASE("act") {
  std::mt19937_64 rng(2);
  const auto m = random_classical_group(rng, 2);
  const auto& a1 = m.generator(1);
  const auto& a2 = m.generator(2);
  CHECK(same_tuple(act(RealStructureSpec(FgAuto::identity(2)), m),
                   canonical_J(m), 1e-12));
  CHECK(same_tuple(act(RealStructureSpec(aut({"x2", "x1"})), m),
                   MarkedSchottky({bar_conjugate(a2), bar_conjugate(a1)}),
                   1e-12));
  CHECK(same_tuple(act(RealStructureSpec(aut({"x1^-1", "x2"})), m),
                   MarkedSchottky({bar_conjugate(a1).inverse(),
                                   bar_conjugate(a2)}),
                   1e-12));
  CHECK_THROWS_AS(act(RealStructureSpec(FgAuto::identity(3)), m),
                  RankMismatch);
}

TEST_CASE("RealStructureSpec requires an involutive twist") {
  CHECK_THROWS_AS(RealStructureSpec(nielsen(4, 2)), PreconditionFailed);
  CHECK_THROWS_AS(RealStructureSpec(aut({"x2^-1", "x1", "x3"})),
                  PreconditionFailed);
  // order four in Out(F_2), order two modulo rho_0
  CHECK_NOTHROW(RealStructureSpec(aut({"x2^-1", "x1"})));
}

TEST_CASE("act twice is equivalent to the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_classical_group(rng, 2);
    for (const auto& cls : genus2_classes()) {
      const auto twice = act(cls.spec, act(cls.spec, m));
      if (cls.tag == Genus2Tag::rho3) {
        // twice = (A1^-1, A2^-1): conjugate to m through the Keen involution
        const auto e = keen_involution(m.generator(1), m.generator(2));
        CHECK(witness_defect(e, m, twice) < 1e-7);
      } else {
        CHECK(same_tuple(twice, m, 1e-9));
      }
    }
  }
}

TEST_CASE("is_fixed_point: real tuples and the imaginary-axis example") {
  const MarkedSchottky real(
      {real_hyperbolic(3, 0), real_hyperbolic(3, 20), real_hyperbolic(4, -20)});
  const auto wit =
      is_fixed_point(RealStructureSpec(FgAuto::identity(3)), real, kTol);
  REQUIRE(wit);
  CHECK(projectively_equal(wit->conjugator, MobiusMap::identity(), 1e-9));
  CHECK(wit->residual < 1e-12);

  // A1(z) = (a z + i t)/(i s z + conj(a)) with a = 2, t = 1, s = -3
  const MobiusMap a1(2.0, I, -3.0 * I, 2.0);
  const MarkedSchottky mixed({a1, real_hyperbolic(3, 0), real_hyperbolic(6, 0)});
  const RealStructureSpec invert_first(aut({"x1^-1", "x2", "x3"}));
  const auto found = is_fixed_point(invert_first, mixed, kTol);
  REQUIRE(found);
  CHECK(found->residual < kTol);
  CHECK(witness_defect(found->conjugator, mixed, act(invert_first, mixed)) <
        kTol);
  // the canonical structure does not fix it: A1 is not real
  CHECK_FALSE(is_fixed_point(RealStructureSpec(FgAuto::identity(3)), mixed,
                             kTol));

  CHECK_THROWS_AS(is_fixed_point(RealStructureSpec(FgAuto::identity(1)),
                                 MarkedSchottky({a1}), kTol),
                  PreconditionFailed);
  // A2 shares its attracting point with A1
  const MobiusMap d(2, 0, 0, 0.5);
  CHECK_THROWS_AS(is_fixed_point(RealStructureSpec(FgAuto::identity(2)),
                                 MarkedSchottky({d, d}), kTol),
                  DegenerateMarking);
}

TEST_CASE("keen_involution") {
  const MobiusMap a1(2, 0, 0, 0.5);
  // fixed points 1 and -1
  const MobiusMap a2 = from_three_points(
      {SpherePoint::finite(1), SpherePoint::finite(-1), SpherePoint::finite(0)},
      {SpherePoint::finite(1), SpherePoint::finite(-1),
       SpherePoint::finite(0.5)});
  const auto e = keen_involution(a1, a2);
  CHECK(e.trace() == Complex(0.0, 0.0));
  for (const auto& a : {a1, a2}) {
    CHECK(projectively_equal(conjugate_by(e, a), a.inverse(), 1e-9));
  }
  CHECK_THROWS_AS(keen_involution(a1, compose(a1, a1)), SingularDifference);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_classical_group(rng, 2);
    const auto k = keen_involution(m.generator(1), m.generator(2));
    CHECK(k.a() + k.d() == Complex(0.0, 0.0));
    CHECK(projectively_equal(compose(k, k), MobiusMap::identity(), 1e-9));
    for (int j = 1; j <= 2; ++j) {
      CHECK(projectively_equal(conjugate_by(k, m.generator(j)),
                               m.generator(j).inverse(), 1e-8));
    }
  }
}

TEST_CASE("genus-2 classes") {
  const auto classes = genus2_classes();
  REQUIRE(classes.size() == 4);
  int empty = 0;
  for (const auto& c : classes) empty += c.components == 0 ? 1 : 0;
  CHECK(empty == 1);
  CHECK(classes[3].tag == Genus2Tag::rho3);
  CHECK(classes[3].components == 0);
  CHECK(equal_mod_inner_rho0(classes[1].spec.rho * classes[2].spec.rho,
                             classes[3].spec.rho));
  // the three non-trivial classes are pairwise distinct
  for (int i = 1; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(refuted_by_invariants(classes[i].spec.rho, classes[j].spec.rho,
                                  true));
}

TEST_CASE("rho3 has no real points on sampled groups") {
  const auto spec = genus2_classes()[3].spec;
  std::mt19937_64 rng(5);
  int found = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_classical_group(rng, 2);
    if (is_fixed_point(spec, m, kTol)) ++found;
  }
  CHECK(found == 0);
}

TEST_CASE("structure_of_signature_g2 reproduces the rank-2 table") {
  const auto classes = genus2_classes();
  for (const auto& [text, tag] : kGenus2Table) {
    CAPTURE(text);
    const auto s = parse_signature(text);
    const auto result = structure_of_signature_g2(s);
    CHECK(result.tag == tag);
    const auto& rep = classes[static_cast<int>(tag)].spec.rho;
    const auto phi = rho_from_signature(s);
    CHECK(equal_mod_inner_rho0(
        result.conjugator * phi * result.conjugator.inverse(), rep));
  }
  CHECK_THROWS_AS(structure_of_signature_g2(parse_signature("(2,0,0,0,0;)")),
                  InvalidSignature);
}

TEST_CASE("reflection pair realisation") {
  const Signature s = parse_signature("(2,0,0,0,0;)");
  const MobiusMap e1(0, 1, 1, 0, Orientation::reversing);
  const MobiusMap e2(5, -24, 1, -5, Orientation::reversing);
  CHECK(projectively_equal(apply(e2, SpherePoint::finite(5.5)),
                           SpherePoint::finite(7.0), 1e-12));
  const auto r = realize(s, {{{SymbolKind::E, 1}, e1}, {{SymbolKind::E, 2}, e2}});
  const auto rho = rho_from_signature(s);
  const auto lhs = compose(e1, compose(r.group.generator(1), e1));
  CHECK(projectively_equal(lhs, evaluate_word(r.group, rho.image(1)), 1e-9));
}

TEST_CASE("standard realisations are fixed by their real structures") {
  int checked = 0;
  for (int g = 1; g <= 4; ++g) {
    for (const auto& s : signatures_of_rank(g)) {
      CAPTURE(to_string(s));
      const auto r = standard_realization(s);
      for (const auto& [sym, map] : r.symbols) {
        const auto cls = classify(map);
        switch (sym.kind) {
          case SymbolKind::E:
            CHECK((cls == MapClass::reflection ||
                   cls == MapClass::imaginary_reflection));
            CHECK(cls == (sym.i <= s.a ? MapClass::reflection
                                       : MapClass::imaginary_reflection));
            break;
          case SymbolKind::F: CHECK(cls == MapClass::reflection); break;
          case SymbolKind::N: CHECK(cls == MapClass::glide_reflection); break;
          default: CHECK(cls == MapClass::loxodromic);
        }
      }
      // conjugation by the transversal reproduces rho_K letter by letter
      const auto rho = rho_from_signature(s);
      const auto t = r.symbols.at(transversal(s));
      for (int j = 1; j <= g; ++j) {
        const auto lhs = compose(t, compose(r.group.generator(j), t.inverse()));
        const auto rhs = evaluate_word(r.group, rho.image(j));
        CHECK(projective_distance(lhs, rhs) <
              1e-9 * std::max(1.0, std::abs(rhs.a()) + std::abs(rhs.b()) +
                                       std::abs(rhs.c()) + std::abs(rhs.d())));
      }
      if (g >= 2) {
        const auto wit = is_fixed_point(RealStructureSpec(rho), r.group, kTol);
        CHECK(wit);
      }
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("rank-2 realisations are real points of their class") {
  const auto classes = genus2_classes();
  for (const auto& [text, tag] : kGenus2Table) {
    CAPTURE(text);
    const auto s = parse_signature(text);
    const auto r = standard_realization(s);
    const auto result = structure_of_signature_g2(s);
    // remark by psi^-1 so the twist becomes the class representative
    const auto psi_inv = result.conjugator.inverse();
    std::vector<MobiusMap> gens;
    for (const auto& image : psi_inv.images()) {
      gens.push_back(evaluate_word(r.group, image));
    }
    const MarkedSchottky remarked(gens);
    const auto wit = is_fixed_point(classes[static_cast<int>(tag)].spec,
                                    remarked, kTol);
    CHECK(wit);
    CHECK_FALSE(is_fixed_point(classes[3].spec, remarked, kTol));
  }
}

TEST_CASE("conjugacy experiment") {
  const auto report = conjugacy_experiment(2, 5000);
  CHECK(report.classes.size() == 3);
  CHECK(report.unresolved_pairs == 0);
  int first = -1, second = -1;
  for (int i = 0; i < static_cast<int>(report.entries.size()); ++i) {
    const auto text = to_string(report.entries[i].signature);
    if (text == to_string(parse_signature("(1,0,1,0,0;)"))) first = i;
    if (text == to_string(parse_signature("(1,0,0,1,0;)"))) second = i;
  }
  REQUIRE(first >= 0);
  REQUIRE(second >= 0);
  bool certified = false;
  for (const auto& group : report.groups)
    for (const auto& p : group.pairs)
      if (std::minmax(p.first, p.second) == std::minmax(first, second))
        certified = p.verdict == Verdict::certified;
  CHECK(certified);
  CHECK_THROWS_AS(conjugacy_experiment(6, 10), BoundExceeded);
}

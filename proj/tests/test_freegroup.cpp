#include <random>

#include "doctest.h"
#include "schottky/errors.hpp"
#include "schottky/freegroup.hpp"
#include "schottky/signature_rho.hpp"
#include "test_support.hpp"

using namespace schottky;
using schottky::testing::random_nielsen_product;
using schottky::testing::random_word;

namespace {
FreeWord w(const char* text) { return FreeWord::parse(text); }

FgAuto aut(int g, std::initializer_list<const char*> images) {
  std::vector<FreeWord> words;
  for (const char* t : images) words.push_back(w(t));
  return FgAuto(g, words);
}
}  // namespace

TEST_CASE("word algebra") {
  CHECK((w("x1") * w("x1^-1")).empty());
  CHECK(w("x1 x2") * w("x2^-1 x3") == w("x1 x3"));
  CHECK(w("x1 x2^-1").inverse() == w("x2 x1^-1"));
  CHECK(to_string(w("x1  x3^-1")) == "x1 x3^-1");
  CHECK(to_string(FreeWord()) == "1");
  CHECK(w("1").empty());
  CHECK(w("x2 x2^-1 x1").size() == 1);
  CHECK_THROWS_AS(w("y1"), ParseError);
  CHECK_THROWS_AS(w("x0"), ParseError);
  CHECK_THROWS_AS(w("x1^2"), ParseError);
}

TEST_CASE("composition and Nielsen generators") {
  const auto rho3 = nielsen(3, 2), rho4 = nielsen(4, 2);
  CHECK(rho3 * rho3 == FgAuto::identity(2));
  CHECK(auto_apply(rho3 * rho4, w("x1")) == w("x1^-1 x2"));
  CHECK(FgAuto::identity(2) * rho4 == rho4);
  CHECK(nielsen(1, 2).image(1) == w("x2"));
  CHECK(nielsen(2, 3).image(3) == w("x1"));
  CHECK((rho4 * rho4).image(1) == w("x1 x2 x2"));
  CHECK_THROWS_AS(nielsen(1, 2) * nielsen(1, 3), RankMismatch);
}

TEST_CASE("basis check rejects endomorphisms") {
  CHECK_THROWS_AS(aut(2, {"x1 x1", "x2"}), NotAutomorphism);
  CHECK_THROWS_AS(aut(2, {"x1", "x1"}), NotAutomorphism);
  CHECK_THROWS_AS(aut(2, {"x1 x2", "x2 x1"}), NotAutomorphism);
  CHECK_THROWS_AS(aut(2, {"x1 x2 x1^-1 x2^-1", "x2"}), NotAutomorphism);
  CHECK_THROWS_AS(aut(3, {"x1", "x2", "1"}), NotAutomorphism);
  CHECK_NOTHROW(aut(2, {"x2^-1", "x1"}));
  CHECK_NOTHROW(aut(3, {"x1 x2 x3", "x2 x3", "x3 x1^-1"}));
}

TEST_CASE("inverse by folding") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const int g = 2 + i % 3;
    const auto phi = random_nielsen_product(rng, g, 12);
    // re-check through the public constructor
    const FgAuto checked(g, phi.images());
    const auto inv = checked.inverse();
    CHECK(phi * inv == FgAuto::identity(g));
    CHECK(inv * phi == FgAuto::identity(g));
  }
}

TEST_CASE("is_inner") {
  std::mt19937_64 rng(5);
  CHECK(*is_inner(FgAuto::conjugation(w("x1"), 3)) == w("x1"));
  CHECK(is_inner(FgAuto::identity(2))->empty());
  CHECK_FALSE(is_inner(nielsen(3, 2)));
  CHECK_FALSE(is_inner(nielsen(1, 2)));
  for (int i = 0; i < 500; ++i) {
    const int g = 2 + i % 3;
    const auto c = random_word(rng, g, 1 + i % 9);
    const auto phi = FgAuto::conjugation(c, g);
    const auto found = is_inner(phi);
    REQUIRE(found);
    CHECK(*found == c);
  }
}

TEST_CASE("order_in_out") {
  CHECK(order_in_out(nielsen(3, 2), 10) == 2);
  CHECK(order_in_out(nielsen(1, 3), 10) == 2);
  const auto r = aut(2, {"x2^-1", "x1"});
  CHECK(r * r == aut(2, {"x1^-1", "x2^-1"}));
  CHECK(order_in_out(r, 10) == 4);
  CHECK_FALSE(order_in_out(nielsen(4, 2), 20));
  CHECK(order_in_out(FgAuto::conjugation(w("x2 x1"), 2), 3) == 1);
}

TEST_CASE("abelianize") {
  CHECK(abelianize(nielsen(1, 2)) == IntMatrix{{0, 1}, {1, 0}});
  CHECK(abelianize(nielsen(4, 2)) == IntMatrix{{1, 0}, {1, 1}});
  CHECK(abelianize(FgAuto::conjugation(w("x1 x2^-1"), 2)) ==
        IntMatrix{{1, 0}, {0, 1}});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const int g = 2 + i % 3;
    const auto phi = random_nielsen_product(rng, g, 6);
    const auto psi = random_nielsen_product(rng, g, 6);
    CHECK(abelianize(phi * psi) ==
          multiply(abelianize(phi), abelianize(psi)));
    const auto det = determinant(abelianize(phi));
    CHECK((det == 1 || det == -1));
  }
  CHECK(determinant({{2, 1}, {1, 1}}) == 1);
  CHECK(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
  CHECK(determinant({{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("symbol words") {
  const Symbol e1{SymbolKind::E, 1}, f1{SymbolKind::F, 1},
      a11{SymbolKind::A, 1, 1}, a21{SymbolKind::A, 2, 1};
  CHECK((symbol_word(e1) * symbol_word(e1)).empty());
  CHECK(symbol_word(e1, -1) == symbol_word(e1));
  CHECK(symbol_word(f1) * symbol_word(a11) ==
        symbol_word(a11) * symbol_word(f1));
  CHECK(symbol_word(f1) * symbol_word(a21) !=
        symbol_word(a21) * symbol_word(f1));
  CHECK((symbol_word(f1) * symbol_word(a11) * symbol_word(f1)) ==
        symbol_word(a11));
  CHECK(to_string(symbol_word(a21, -1)) == "A2,1^-1");
}

TEST_CASE("rho_K examples") {
  const auto case3 = rho_from_signature(parse_signature("(0,0,0,2,0;)"));
  CHECK(case3 == aut(3, {"x1", "x1 x3^-1", "x1 x2^-1"}));
  const auto case1 = rho_from_signature(parse_signature("(2,0,0,0,0;)"));
  CHECK(case1 == aut(1, {"x1^-1"}));
  const auto swap = rho_from_signature(parse_signature("(1,0,1,0,0;)"));
  CHECK(swap == aut(2, {"x2", "x1"}));
  CHECK(rho_from_signature(parse_signature("(1,0,0,0,1;1)")) ==
        aut(2, {"x2 x1 x2^-1", "x2^-1"}));
  CHECK(rho_from_signature(parse_signature("(0,0,0,0,1;2)")) ==
        FgAuto::identity(2));
  CHECK_THROWS_AS(rho_from_signature(parse_signature("(1,0,0,0,0;)")),
                  InvalidSignature);
  CHECK_THROWS_AS(rho_from_signature(parse_signature("(0,0,1,0,0;)")),
                  NotExtended);
}

TEST_CASE("rho_K: basis rewrites to itself and rho^2 is inner") {
  int checked = 0;
  for (int g = 1; g <= 6; ++g) {
    for (const auto& s : signatures_of_rank(g)) {
      const auto basis = kplus_basis(s);
      REQUIRE(static_cast<int>(basis.size()) == g);
      for (int j = 1; j <= g; ++j) {
        CHECK(basis[j - 1].parity() == 0);
        CHECK(rewrite(s, basis[j - 1]) == FreeWord::generator(j));
      }
      const auto rho = rho_from_signature(s);
      const auto order = order_in_out(rho, 2);
      CHECK(order.has_value());
      // r^2 is trivial for involutions, N_1^2 = x_1 otherwise
      const auto expected = rho_case(s) == 3 ? FgAuto::conjugation(
                                                   FreeWord::generator(1), g)
                                             : FgAuto::identity(g);
      CHECK(rho * rho == expected);
      ++checked;
    }
  }
  CHECK(checked > 250);
}

TEST_CASE("rewrite rejects orientation-reversing words") {
  const auto s = parse_signature("(2,0,0,0,0;)");
  CHECK_THROWS_AS(rewrite(s, symbol_word({SymbolKind::E, 2})),
                  PreconditionFailed);
  CHECK_THROWS_AS(rewrite(s, symbol_word({SymbolKind::L, 1})),
                  PreconditionFailed);
}

TEST_CASE("table diagnostics") {
  for (const auto& d :
       table_diagnostics(parse_signature("(0,0,0,3,0;)"))) {
    CHECK(d.status == TableStatus::agree);
  }
  // case 1: the displayed shift is one more than the derived one
  const auto c1 = table_diagnostics(parse_signature("(2,0,1,0,1;1)"));
  CHECK(c1[0].status == TableStatus::agree);
  CHECK(c1[1].status == TableStatus::disagree);
  CHECK(c1[1].derived == "x3");
  CHECK(*c1[1].displayed == "x4");
  // case 2 agrees on every displayed line
  for (const auto& d :
       table_diagnostics(parse_signature("(0,0,1,1,2;1,1)"))) {
    CHECK(d.status != TableStatus::disagree);
    CHECK(d.status != TableStatus::out_of_range);
  }
}

TEST_CASE("integer conjugacy invariants") {
  using V = std::vector<std::int64_t>;
  CHECK(characteristic_polynomial({{0, 1}, {1, 0}}) == V{-1, 0, 1});
  CHECK(characteristic_polynomial({{2, 1}, {1, 1}}) == V{1, -3, 1});
  CHECK(characteristic_polynomial({{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}) ==
        V{1, -1, -1, 1});
  CHECK(elementary_divisors({{2, 4}, {6, 8}}) == V{2, 4});
  CHECK(elementary_divisors({{-1, 1}, {1, -1}}) == V{1, 0});
  CHECK(elementary_divisors({{-2, 0}, {0, 0}}) == V{2, 0});
  CHECK(elementary_divisors({{6, 0, 0}, {0, 10, 0}, {0, 0, 15}}) ==
        V{1, 30, 30});
  // invariants agree on conjugates
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const int g = 2 + i % 3;
    const auto m = abelianize(random_nielsen_product(rng, g, 5));
    const auto p = random_nielsen_product(rng, g, 5);
    const auto pm = abelianize(p), pinv = abelianize(p.inverse());
    const auto c = multiply(multiply(pm, m), pinv);
    CHECK(characteristic_polynomial(c) == characteristic_polynomial(m));
    CHECK(determinant(c) == determinant(m));
    auto shifted = [](IntMatrix x) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k][k] -= 1;
      return x;
    };
    CHECK(elementary_divisors(shifted(c)) == elementary_divisors(shifted(m)));
  }
}

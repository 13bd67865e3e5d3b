#include "schottky/realstructures.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "schottky/config.hpp"
#include "schottky/errors.hpp"

namespace schottky {

namespace {

FreeWord x(int j) { return FreeWord::generator(j); }

FgAuto rho0() { return FgAuto(2, {x(1).inverse(), x(2).inverse()}); }

bool inner_or_rho0(const FgAuto& d, bool modulo_rho0) {
  if (is_inner(d)) return true;
  return modulo_rho0 && d.rank() == 2 && is_inner(rho0() * d);
}

double max_entry(const MobiusMap& f) {
  double m = 0.0;
  for (const auto& e : f.matrix()) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

RealStructureSpec::RealStructureSpec(FgAuto r) : rho(std::move(r)) {
  if (order_in_out(rho, 2)) return;
  if (rho.rank() == 2 && inner_or_rho0(rho * rho, true)) return;
  throw PreconditionFailed("real structure twist must have order <= 2: " +
                           to_string(rho));
}

MarkedSchottky canonical_J(const MarkedSchottky& m) {
  std::vector<MobiusMap> gens;
  for (const auto& a : m.generators()) gens.push_back(bar_conjugate(a));
  return MarkedSchottky(std::move(gens));
}

MarkedSchottky act(const RealStructureSpec& spec, const MarkedSchottky& m) {
  if (spec.rho.rank() != m.rank()) {
    throw RankMismatch("act: twist of rank " + std::to_string(spec.rho.rank()) +
                       " on a group of rank " + std::to_string(m.rank()));
  }
  std::vector<MobiusMap> gens;
  for (const auto& w : spec.rho.images()) {
    gens.push_back(bar_conjugate(evaluate_word(m, w)));
  }
  return MarkedSchottky(std::move(gens));
}

std::optional<FixedPointWitness> is_fixed_point(const RealStructureSpec& spec,
                                                const MarkedSchottky& m,
                                                double tol) {
  if (m.rank() < 2) {
    throw PreconditionFailed("is_fixed_point needs rank >= 2");
  }
  const MarkedSchottky b = act(spec, m);
  const auto a1 = fixed_data(m.generator(1));
  const auto a2 = fixed_data(m.generator(2));
  const auto b1 = fixed_data(b.generator(1));
  const auto b2 = fixed_data(b.generator(2));
  MobiusMap candidate = MobiusMap::identity();
  try {
    candidate = from_three_points({a1.attracting, a1.repelling, a2.attracting},
                                  {b1.attracting, b1.repelling, b2.attracting},
                                  default_tolerance());
  } catch (const DegenerateTriple& e) {
    throw DegenerateMarking(std::string("is_fixed_point: ") + e.what());
  }
  double residual = 0.0;
  for (int j = 1; j <= m.rank(); ++j) {
    const MobiusMap lhs = conjugate_by(candidate, m.generator(j));
    const MobiusMap& rhs = b.generator(j);
    residual = std::max(residual, projective_distance(lhs, rhs) /
                                      std::max(1.0, max_entry(rhs)));
  }
  if (residual < tol) return FixedPointWitness{candidate, residual};
  return std::nullopt;
}

MobiusMap keen_involution(const MobiusMap& a1, const MobiusMap& a2,
                          double tol) {
  if (a1.is_reversing() || a2.is_reversing()) {
    throw PreconditionFailed("keen_involution needs orientation-preserving maps");
  }
  const auto& x = a1.matrix();
  const auto& y = a2.matrix();
  // the x00 y00 and x11 y11 terms cancel exactly, so drop them
  const Complex e00 = x[1] * y[2] - y[1] * x[2];
  const Complex e01 = (x[0] * y[1] + x[1] * y[3]) - (y[0] * x[1] + y[1] * x[3]);
  const Complex e10 = (x[2] * y[0] + x[3] * y[2]) - (y[2] * x[0] + y[3] * x[2]);
  const Complex det = -e00 * e00 - e01 * e10;
  if (std::abs(det) < tol) {
    throw SingularDifference("A1 A2 - A2 A1 is singular (shared fixed points)");
  }
  const Complex s = std::sqrt(det);
  const Complex d00 = e00 / s;
  return MobiusMap::from_normalized({d00, e01 / s, e10 / s, -d00},
                                    Orientation::preserving);
}

MobiusMap keen_involution(const MobiusMap& a1, const MobiusMap& a2) {
  return keen_involution(a1, a2, default_tolerance());
}

// ---------------------------------------------------------------------------
// Genus two

std::string to_string(Genus2Tag tag) {
  switch (tag) {
    case Genus2Tag::J2: return "J2";
    case Genus2Tag::rho1: return "rho1";
    case Genus2Tag::rho2: return "rho2";
    case Genus2Tag::rho3: return "rho3";
  }
  return "?";
}

std::vector<Genus2Class> genus2_classes() {
  return {
      {Genus2Tag::J2, RealStructureSpec(FgAuto::identity(2)), 5, 1},
      {Genus2Tag::rho1, RealStructureSpec(FgAuto(2, {x(2), x(1)})), 3, 2},
      {Genus2Tag::rho2, RealStructureSpec(FgAuto(2, {x(1).inverse(), x(2)})),
       2, 2},
      {Genus2Tag::rho3, RealStructureSpec(FgAuto(2, {x(2).inverse(), x(1)})),
       0, 2},
  };
}

namespace {

IntMatrix negated(IntMatrix m) {
  for (auto& row : m)
    for (auto& v : row) v = -v;
  return m;
}

// Sign-normalised so that M and -M share a key.
IntMatrix projective_key(const IntMatrix& m) {
  for (const auto& row : m)
    for (auto v : row)
      if (v != 0) return v < 0 ? negated(m) : m;
  return m;
}

struct Invariants {
  std::int64_t det;
  std::vector<std::int64_t> charpoly;
  std::vector<std::int64_t> minus_identity;
  std::vector<std::int64_t> plus_identity;
  friend bool operator==(const Invariants&, const Invariants&) = default;
};

Invariants invariants_of(const IntMatrix& m) {
  auto shifted = [&](std::int64_t s) {
    IntMatrix out = m;
    for (std::size_t k = 0; k < out.size(); ++k) out[k][k] += s;
    return elementary_divisors(out);
  };
  return {determinant(m), characteristic_polynomial(m), shifted(-1),
          shifted(1)};
}

}  // namespace

bool refuted_by_invariants(const FgAuto& phi, const FgAuto& psi,
                           bool modulo_rho0) {
  if (phi.rank() != psi.rank()) {
    throw RankMismatch("refuted_by_invariants: ranks differ");
  }
  const IntMatrix m = abelianize(phi), n = abelianize(psi);
  const Invariants im = invariants_of(m);
  if (im == invariants_of(n)) return false;
  if (modulo_rho0 && phi.rank() == 2 && im == invariants_of(negated(n))) {
    return false;
  }
  return true;
}

std::optional<FgAuto> find_conjugator(const FgAuto& phi, const FgAuto& target,
                                      int budget, bool modulo_rho0) {
  const int g = phi.rank();
  if (target.rank() != g) throw RankMismatch("find_conjugator: ranks differ");
  const bool mod = modulo_rho0 && g == 2;
  const IntMatrix want = abelianize(target);
  const IntMatrix want_neg = negated(want);
  const FgAuto target_inv = target.inverse();

  std::vector<FgAuto> moves;
  for (int k = 1; k <= 4; ++k) {
    moves.push_back(nielsen(k, g));
    moves.push_back(nielsen(k, g).inverse());
  }
  auto key = [&](const FgAuto& a) {
    const IntMatrix m = abelianize(a);
    return mod ? projective_key(m) : m;
  };

  std::deque<FgAuto> queue{FgAuto::identity(g)};
  std::set<IntMatrix> seen{key(queue.front())};
  int examined = 0;
  while (!queue.empty() && examined < budget) {
    const FgAuto psi = std::move(queue.front());
    queue.pop_front();
    ++examined;
    const FgAuto candidate = psi * phi * psi.inverse();
    const IntMatrix ab = abelianize(candidate);
    if (ab == want || (mod && ab == want_neg)) {
      if (inner_or_rho0(target_inv * candidate, mod)) return psi;
    }
    for (const auto& move : moves) {
      FgAuto next = move * psi;
      if (seen.insert(key(next)).second) queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

Genus2Classification structure_of_signature_g2(const Signature& s,
                                               int budget) {
  if (validate_signature(s) != 2) {
    throw InvalidSignature("structure_of_signature_g2 needs a rank-2 signature");
  }
  const FgAuto phi = rho_from_signature(s);
  for (const auto& cls : genus2_classes()) {
    if (refuted_by_invariants(phi, cls.spec.rho, true)) continue;
    if (auto psi = find_conjugator(phi, cls.spec.rho, budget, true)) {
      return {cls.tag, *psi};
    }
  }
  throw ClassificationInconclusive("no class certified for " + to_string(s) +
                                   " within budget " + std::to_string(budget));
}

// ---------------------------------------------------------------------------
// Conjugacy experiment

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ConjugacyReport conjugacy_experiment(int g, int budget, int max_rank) {
  if (g > max_rank) {
    throw BoundExceeded("conjugacy_experiment: rank " + std::to_string(g) +
                        " exceeds bound " + std::to_string(max_rank));
  }
  ConjugacyReport report;
  report.g = g;
  report.budget = budget;
  const bool mod = g == 2;

  for (const auto& s : signatures_of_rank(g)) {
    auto gammas = s.gammas;
    std::sort(gammas.begin(), gammas.end());
    std::string key = "(" + std::to_string(s.a + s.b) + "," +
                      std::to_string(s.c + s.d) + "," + std::to_string(s.e) +
                      ";";
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      key += (i ? "," : "") + std::to_string(gammas[i]);
    }
    key += ")";
    report.entries.push_back({s, rho_from_signature(s), key});
  }
  const int n = static_cast<int>(report.entries.size());

  std::map<std::pair<int, int>, Verdict> cache;
  auto verdict = [&](int i, int j) {
    const auto k = std::minmax(i, j);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    const auto& p = report.entries[k.first].rho;
    const auto& q = report.entries[k.second].rho;
    Verdict v = Verdict::inconclusive;
    if (refuted_by_invariants(p, q, mod)) {
      v = Verdict::refuted;
    } else if (find_conjugator(p, q, budget, mod)) {
      v = Verdict::certified;
    }
    cache.emplace(k, v);
    return v;
  };

  std::map<std::string, int> group_of;
  for (int i = 0; i < n; ++i) {
    const auto& key = report.entries[i].key;
    auto [it, inserted] =
        group_of.emplace(key, static_cast<int>(report.groups.size()));
    if (inserted) report.groups.push_back({key, {}, {}});
    auto& group = report.groups[it->second];
    for (int other : group.members) {
      group.pairs.push_back({other, i, verdict(other, i)});
    }
    group.members.push_back(i);
  }

  // conjugacy is an equivalence, so one comparison per existing class
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    int open = 0;
    for (auto& cls : report.classes) {
      const Verdict v = verdict(cls.front(), i);
      if (v == Verdict::certified) {
        cls.push_back(i);
        placed = true;
        break;
      }
      if (v == Verdict::inconclusive) ++open;
    }
    if (!placed) {
      report.classes.push_back({i});
      report.unresolved_pairs += open;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Geometric realisations

MobiusMap evaluate_symbol_word(const std::map<Symbol, MobiusMap>& symbols,
                               const SymbolWord& w) {
  MobiusMap out = MobiusMap::identity();
  for (const auto& l : w.letters()) {
    const auto it = symbols.find(l.symbol);
    if (it == symbols.end()) {
      throw PreconditionFailed("no map for symbol " + to_string(l.symbol));
    }
    out = compose(out, l.exponent > 0 ? it->second : it->second.inverse());
  }
  return out;
}

Realization realize(const Signature& s, std::map<Symbol, MobiusMap> symbols) {
  std::vector<MobiusMap> gens;
  for (const auto& w : kplus_basis(s)) {
    gens.push_back(evaluate_symbol_word(symbols, w));
  }
  MarkedSchottky group(std::move(gens));
  return {s, std::move(symbols), std::move(group)};
}

namespace {

MobiusMap circle_reflection(Complex c, double r) {
  return MobiusMap(c, r * r - std::norm(c), 1.0, -std::conj(c),
                   Orientation::reversing);
}

MobiusMap circle_antipodal(Complex c, double r) {
  return MobiusMap(c, -r * r - std::norm(c), 1.0, -std::conj(c),
                   Orientation::reversing);
}

}  // namespace

Realization standard_realization(const Signature& s) {
  validate_signature(s);
  std::map<Symbol, MobiusMap> maps;
  int slot = 0;
  auto next_center = [&] { return Complex(10.0 * slot++, 0.0); };

  for (int i = 1; i <= s.a + s.b; ++i) {
    const Complex q = next_center();
    maps.emplace(Symbol{SymbolKind::E, i},
                 i <= s.a ? circle_reflection(q, 1.0) : circle_antipodal(q, 1.0));
  }
  for (int i = 1; i <= s.c; ++i) {
    const Complex q = next_center();
    maps.emplace(Symbol{SymbolKind::L, i},
                 pairing_map(Circle::disc(q - 2.0, 1.0),
                             Circle::disc(q + 2.0, 1.0)));
  }
  for (int i = 1; i <= s.d; ++i) {
    // reflect in the left circle, then translate onto the right one
    const Complex q = next_center();
    maps.emplace(Symbol{SymbolKind::N, i},
                 compose(MobiusMap(1.0, 4.0, 0.0, 1.0),
                         circle_reflection(q - 2.0, 1.0)));
  }
  for (int f = 1; f <= s.e; ++f) {
    // Cayley map sending the real line to |z - q| = 3
    const Complex q = next_center();
    const Complex i(0.0, 1.0);
    const MobiusMap cayley(q + 3.0, (q - 3.0) * i, 1.0, i);
    const MobiusMap cayley_inv = cayley.inverse();
    maps.emplace(Symbol{SymbolKind::F, f},
                 compose(cayley, compose(MobiusMap::conjugation(), cayley_inv)));
    for (int k = 1; k <= s.gammas[f - 1]; ++k) {
      // isometric circles |z +- p| = 1
      const double p = 3.0 * k;
      const MobiusMap fuchsian(p, p * p - 1.0, 1.0, p);
      maps.emplace(Symbol{SymbolKind::A, f, k},
                   compose(cayley, compose(fuchsian, cayley_inv)));
    }
  }
  return realize(s, std::move(maps));
}

}  // namespace schottky

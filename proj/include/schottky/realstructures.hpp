#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schottky/enumeration.hpp"
#include "schottky/freegroup.hpp"
#include "schottky/schottky.hpp"
#include "schottky/signature_rho.hpp"

namespace schottky {

/// A real structure J_g o rho on marked Schottky space, stored by its
/// holomorphic twist rho. The bar is applied by `act`.
struct RealStructureSpec {
  FgAuto rho;

  /// Throws PreconditionFailed unless rho has order 1 or 2 in Out(F_g), or,
  /// in rank 2, rho^2 equals rho_0 = (x1^-1, x2^-1) modulo inner
  /// automorphisms (rho_0 acts trivially on rank-2 marked space).
  explicit RealStructureSpec(FgAuto rho);
};

struct FixedPointWitness {
  MobiusMap conjugator;
  /// max_j of the relative projective distance between M A_j M^-1 and B_j.
  double residual = 0.0;
};

/// (A_1..A_g) -> (conj A_1..conj A_g).
MarkedSchottky canonical_J(const MarkedSchottky& m);

/// Generator j is bar_conjugate(evaluate_word(m, rho(x_j))).
/// Throws RankMismatch.
MarkedSchottky act(const RealStructureSpec& spec, const MarkedSchottky& m);

/// Solves M A_j M^-1 = B_j with (B_j) = act(spec, m). The only candidate
/// sends (attr A_1, rep A_1, attr A_2) to the same points of B. Throws
/// PreconditionFailed for rank < 2 and DegenerateMarking when either triple
/// collides.
std::optional<FixedPointWitness> is_fixed_point(const RealStructureSpec& spec,
                                                const MarkedSchottky& m,
                                                double tol);

/// E = A_1 A_2 - A_2 A_1, scaled to det 1. The diagonal is formed so that
/// tr E = 0 exactly; E A_j E^-1 = A_j^-1. Throws SingularDifference when
/// |det E| < tol before scaling.
MobiusMap keen_involution(const MobiusMap& a1, const MobiusMap& a2,
                          double tol);
MobiusMap keen_involution(const MobiusMap& a1, const MobiusMap& a2);

// ---------------------------------------------------------------------------
// Genus two

enum class Genus2Tag { J2, rho1, rho2, rho3 };
std::string to_string(Genus2Tag tag);

struct Genus2Class {
  Genus2Tag tag;
  RealStructureSpec spec;
  /// Connected components of the real points.
  int components;
  /// Order of the twist in Out(F_2) / <<rho_0>>.
  int twist_order;
};

/// J_2, rho1 = (x2, x1), rho2 = (x1^-1, x2), rho3 = (x2^-1, x1).
std::vector<Genus2Class> genus2_classes();

/// `conjugator * phi * conjugator^-1` equals the class representative up to
/// inner automorphisms and rho_0.
struct Genus2Classification {
  Genus2Tag tag;
  FgAuto conjugator;
};

/// Classifies rho_from_signature(s) for a rank-2 signature. Throws
/// InvalidSignature unless validate_signature(s) == 2 and
/// ClassificationInconclusive when `budget` automorphisms were tried.
Genus2Classification structure_of_signature_g2(const Signature& s,
                                               int budget = 20000);

/// Some psi with psi phi psi^-1 = target modulo inner automorphisms (and
/// rho_0 when `modulo_rho0`), found by breadth-first search over products of
/// Nielsen generators, deduplicated by abelianization. At most `budget`
/// automorphisms are examined.
std::optional<FgAuto> find_conjugator(const FgAuto& phi, const FgAuto& target,
                                      int budget, bool modulo_rho0);

/// True when integer invariants (determinant, characteristic polynomial,
/// elementary divisors of M - I and M + I) of the abelianizations show the
/// two automorphisms are not conjugate in Out(F_g) (or its quotient by
/// rho_0 when `modulo_rho0`).
bool refuted_by_invariants(const FgAuto& phi, const FgAuto& psi,
                           bool modulo_rho0);

// ---------------------------------------------------------------------------
// Conjugacy experiment

enum class Verdict { certified, refuted, inconclusive };
std::string to_string(Verdict v);

struct ExperimentEntry {
  Signature signature;
  FgAuto rho;
  /// (a+b, c+d, e, sorted gammas).
  std::string key;
};

struct PairVerdict {
  int first;
  int second;
  Verdict verdict;
};

struct InvariantGroup {
  std::string key;
  std::vector<int> members;
  std::vector<PairVerdict> pairs;
};

struct ConjugacyReport {
  int g = 0;
  int budget = 0;
  std::vector<ExperimentEntry> entries;
  std::vector<InvariantGroup> groups;
  /// Partition of entries by certified conjugacy across all pairs.
  std::vector<std::vector<int>> classes;
  /// Pairs in different classes that were neither certified nor refuted.
  int unresolved_pairs = 0;
};

/// Throws BoundExceeded when g > max_rank.
ConjugacyReport conjugacy_experiment(int g, int budget, int max_rank = 5);

// ---------------------------------------------------------------------------
// Geometric realisations

/// An extended Schottky group given by Möbius maps for the symbols of a
/// signature, and the marked group of its orientation-preserving half.
struct Realization {
  Signature signature;
  std::map<Symbol, MobiusMap> symbols;
  MarkedSchottky group;
};

/// Evaluates a symbol word left to right. Throws PreconditionFailed for a
/// symbol with no map.
MobiusMap evaluate_symbol_word(const std::map<Symbol, MobiusMap>& symbols,
                               const SymbolWord& w);

/// The marked group of kplus_basis(s) evaluated in the given maps.
Realization realize(const Signature& s, std::map<Symbol, MobiusMap> symbols);

/// A realisation with every free factor in its own disc along the real
/// axis: reflections and imaginary reflections in circles, loxodromics and
/// glide-reflections pairing two circles, and each real factor as a
/// reflection with a Fuchsian Schottky group preserving its circle.
Realization standard_realization(const Signature& s);

}  // namespace schottky

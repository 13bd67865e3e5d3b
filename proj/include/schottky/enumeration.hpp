#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace schottky {

using BigInt = boost::multiprecision::cpp_int;

/// Factor counts (a, b, c, d, e; gamma_1..gamma_e) of an extended Schottky
/// group: reflections, imaginary reflections, loxodromics, glide-reflections
/// and real Schottky groups of ranks gamma_j.
struct Signature {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  int e = 0;
  std::vector<int> gammas;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// "(a,b,c,d,e;g1,g2,...)"; an empty gamma list is written "(a,b,c,d,e;)".
std::string to_string(const Signature& s);
/// Parses the format above; also accepts "-" for an empty gamma list.
/// Throws ParseError.
Signature parse_signature(const std::string& text);

/// Rank g = a + b + 2c + 2d + e - 1 + sum(gamma). Throws InvalidSignature for
/// malformed tuples, NotExtended when a + b + d + e = 0, NegativeRank if g < 0.
int validate_signature(const Signature& s);

/// All signatures of rank g, in canonical lexicographic order.
std::vector<Signature> signatures_of_rank(int g);

/// (e; gamma_1 <= ... <= gamma_e) with e >= 1 and e + sum(gamma) <= g + 1.
struct FactorProfile {
  int e = 0;
  std::vector<int> gammas;

  friend bool operator==(const FactorProfile&, const FactorProfile&) = default;
};

std::string to_string(const FactorProfile& f);

/// Number of topologically distinct real Schottky groups of rank gamma,
/// 2 (2 gamma - 1)! / gamma!.
BigInt t_gamma(int gamma);

/// Multisets of size n drawn from L labels: L (L+1) ... (L+n-1) / n!.
BigInt q_multiset(const BigInt& labels, int n);

std::vector<FactorProfile> delta_set(int g);

/// g_f = g - e - sum(gamma).
int reduced_rank(int g, const FactorProfile& f);

/// Number of (a, b, c, d) completing f to a normal-form tuple of rank g.
BigInt n_f(int g, const FactorProfile& f);
/// The product-of-floors closed form as printed, [(g_f+3)/2][(g_f+5)/2] -
/// delta_f. Agrees with n_f only for odd g_f and g_f = 0; kept for
/// diagnostics.
BigInt n_f_printed(int g, const FactorProfile& f);

/// Unordered choices of real Schottky types for the ranks in f.
BigInt b_f(const FactorProfile& f);

/// Normal-form tuples (a, b, c, d) of rank g with no real factors.
BigInt g0_count(int g);

/// Number of topologically distinct extended Schottky groups of rank g.
BigInt m_g(int g);

/// Independent count: explicit loop over (a, b, c, d) under the normal-form
/// constraints, times the number of multisets of abstractly labelled real
/// factors filling the remaining rank (Euler transform of the label counts).
/// Throws BoundExceeded when g > bound.
BigInt m_g_oracle(int g, int bound = 12);

/// Per-f breakdown used by the JSON report.
struct ProfileTerm {
  FactorProfile profile;
  BigInt n_f;
  BigInt b_f;
};
std::vector<ProfileTerm> profile_terms(int g);

/// (+; h; m) when orientable, (-; h; m) otherwise.
struct RealSchottkyType {
  bool orientable = true;
  int h = 0;
  int m = 1;

  int rank() const { return orientable ? 2 * h + m - 1 : h + m - 1; }
  friend bool operator==(const RealSchottkyType&,
                         const RealSchottkyType&) = default;
  friend auto operator<=>(const RealSchottkyType&,
                          const RealSchottkyType&) = default;
};

std::string to_string(const RealSchottkyType& t);

/// Every (+;h;m) with 2h+m-1 = gamma and (-;h;m) with h >= 1, h+m-1 = gamma.
std::vector<RealSchottkyType> real_schottky_types(int gamma);

/// A real factor at abstract-label granularity: rank gamma, label in
/// 1..t_gamma(gamma).
struct RealFactorLabel {
  int gamma = 1;
  std::int64_t label = 1;

  friend bool operator==(const RealFactorLabel&,
                         const RealFactorLabel&) = default;
  friend auto operator<=>(const RealFactorLabel&,
                          const RealFactorLabel&) = default;
};

/// A topological type in normal form (b + d > 0 implies c = 0).
struct TopType {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  std::vector<RealFactorLabel> factors;  // sorted

  Signature signature() const;
};

struct RefinedTopType {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  std::vector<RealSchottkyType> factors;  // sorted

  Signature signature() const;
};

std::string to_string(const TopType& t);
std::string to_string(const RefinedTopType& t);

/// Explicit list of types at abstract-label granularity; its length equals
/// m_g(g). Throws BoundExceeded when g > bound or the list would exceed
/// max_types entries.
std::vector<TopType> enumerate_types(int g, int bound = 12,
                                     std::size_t max_types = 1'000'000);

/// Same tuples with each real factor expanded into its (+/-; h; m) labels.
/// The per-rank label count differs from t_gamma for gamma >= 2, so this
/// list is not expected to have m_g(g) entries.
std::vector<RefinedTopType> enumerate_refined_types(
    int g, int bound = 12, std::size_t max_types = 1'000'000);

/// Exploratory census of pairings of 2 gamma cyclically ordered circles,
/// each pair carrying an orientation bit. `labelled` counts all pairings;
/// the orbit counts quotient by rotation of the circle labels by 2 positions
/// (angle 2 pi / gamma) or by 1 position (angle pi / gamma).
struct PairingCensus {
  BigInt labelled;
  BigInt orbits_step_two;
  BigInt orbits_step_one;
};

/// Brute force; gamma <= 6.
PairingCensus pairing_census(int gamma);

}  // namespace schottky

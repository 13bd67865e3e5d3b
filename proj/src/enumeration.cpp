#include "schottky/enumeration.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "schottky/errors.hpp"

namespace schottky {

// ---------------------------------------------------------------------------
// Signatures

std::string to_string(const Signature& s) {
  std::ostringstream os;
  os << '(' << s.a << ',' << s.b << ',' << s.c << ',' << s.d << ',' << s.e
     << ';';
  for (std::size_t i = 0; i < s.gammas.size(); ++i) {
    if (i) os << ',';
    os << s.gammas[i];
  }
  os << ')';
  return os.str();
}

Signature parse_signature(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  }
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
    throw ParseError("signature must look like (a,b,c,d,e;g1,...): " + text);
  }
  t = t.substr(1, t.size() - 2);
  const auto semi = t.find(';');
  if (semi == std::string::npos) {
    throw ParseError("signature is missing ';': " + text);
  }
  auto split_ints = [&](const std::string& part) {
    std::vector<int> out;
    if (part.empty() || part == "-") return out;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw ParseError("bad integer '" + item + "' in " + text);
      }
      if (used != item.size()) {
        throw ParseError("bad integer '" + item + "' in " + text);
      }
      out.push_back(v);
    }
    return out;
  };
  const auto head = split_ints(t.substr(0, semi));
  if (head.size() != 5) {
    throw ParseError("signature needs five counts before ';': " + text);
  }
  Signature s{head[0], head[1], head[2], head[3], head[4],
              split_ints(t.substr(semi + 1))};
  return s;
}

int validate_signature(const Signature& s) {
  if (s.a < 0 || s.b < 0 || s.c < 0 || s.d < 0 || s.e < 0) {
    throw InvalidSignature("negative count in " + to_string(s));
  }
  if (static_cast<int>(s.gammas.size()) != s.e) {
    throw InvalidSignature("expected e gamma values in " + to_string(s));
  }
  for (std::size_t i = 0; i < s.gammas.size(); ++i) {
    if (s.gammas[i] < 1 || (i > 0 && s.gammas[i] < s.gammas[i - 1])) {
      throw InvalidSignature("gammas must be positive and non-decreasing in " +
                             to_string(s));
    }
  }
  if (s.a + s.b + s.d + s.e == 0) {
    throw NotExtended("a + b + d + e = 0 in " + to_string(s));
  }
  int g = s.a + s.b + 2 * s.c + 2 * s.d + s.e - 1;
  for (int gamma : s.gammas) g += gamma;
  if (g < 0) throw NegativeRank("negative rank for " + to_string(s));
  return g;
}

namespace {

// Non-decreasing sequences of values >= min_value whose "cost"
// sum(value + 1) is at most budget (exactly budget when exact is set).
void for_each_gamma_sequence(
    int budget, int min_value, bool exact, std::vector<int>& current,
    const std::function<void(const std::vector<int>&)>& visit) {
  if (!exact || budget == 0) visit(current);
  for (int v = min_value; v + 1 <= budget; ++v) {
    current.push_back(v);
    for_each_gamma_sequence(budget - v - 1, v, exact, current, visit);
    current.pop_back();
  }
}

}  // namespace

std::vector<Signature> signatures_of_rank(int g) {
  std::vector<Signature> out;
  if (g < 0) return out;
  const int top = g + 1;
  for (int a = 0; a <= top; ++a) {
    for (int b = 0; a + b <= top; ++b) {
      for (int c = 0; a + b + 2 * c <= top; ++c) {
        for (int d = 0; a + b + 2 * c + 2 * d <= top; ++d) {
          const int rest = top - a - b - 2 * c - 2 * d;  // e + sum(gamma)
          std::vector<int> current;
          for_each_gamma_sequence(
              rest, 1, true, current, [&](const std::vector<int>& gammas) {
                const int e = static_cast<int>(gammas.size());
                if (a + b + d + e == 0) return;
                out.push_back({a, b, c, d, e, gammas});
              });
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms

std::string to_string(const FactorProfile& f) {
  std::ostringstream os;
  os << '(' << f.e << ';';
  for (std::size_t i = 0; i < f.gammas.size(); ++i) {
    if (i) os << ',';
    os << f.gammas[i];
  }
  os << ')';
  return os.str();
}

namespace {
BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int floor_half(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }
}  // namespace

BigInt t_gamma(int gamma) {
  if (gamma < 1) throw std::invalid_argument("t_gamma: gamma must be >= 1");
  return 2 * factorial(2 * gamma - 1) / factorial(gamma);
}

BigInt q_multiset(const BigInt& labels, int n) {
  if (n < 0) throw std::invalid_argument("q_multiset: n must be >= 0");
  BigInt num = 1;
  for (int i = 0; i < n; ++i) num *= labels + i;
  return num / factorial(n);
}

std::vector<FactorProfile> delta_set(int g) {
  std::vector<FactorProfile> out;
  if (g < 0) return out;
  std::vector<int> current;
  for_each_gamma_sequence(g + 1, 1, false, current,
                          [&](const std::vector<int>& gammas) {
                            if (gammas.empty()) return;
                            out.push_back({static_cast<int>(gammas.size()),
                                           gammas});
                          });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.e, x.gammas) < std::tie(y.e, y.gammas);
  });
  return out;
}

int reduced_rank(int g, const FactorProfile& f) {
  int r = g - f.e;
  for (int gamma : f.gammas) r -= gamma;
  return r;
}

BigInt n_f(int g, const FactorProfile& f) {
  const int gf = reduced_rank(g, f);
  if (gf < -1) return 0;
  // b = d = 0: a + 2c = gf + 1
  const BigInt loxodromic_only = 1 + floor_half(gf + 1);
  // c = 0, d = 0, b >= 1
  const BigInt no_glides = 1 + gf;
  // c = 0, d >= 1, 0 <= b <= gf + 1 - 2d
  const BigInt with_glides = BigInt(floor_half(gf + 1)) * floor_half(gf + 2);
  return loxodromic_only + no_glides + with_glides;
}

BigInt n_f_printed(int g, const FactorProfile& f) {
  const int gf = reduced_rank(g, f);
  const int delta = (gf % 2 != 0) ? 1 : 0;
  return BigInt(floor_half(gf + 3)) * floor_half(gf + 5) - delta;
}

BigInt b_f(const FactorProfile& f) {
  BigInt result = 1;
  std::size_t i = 0;
  while (i < f.gammas.size()) {
    std::size_t j = i;
    while (j < f.gammas.size() && f.gammas[j] == f.gammas[i]) ++j;
    result *= q_multiset(t_gamma(f.gammas[i]), static_cast<int>(j - i));
    i = j;
  }
  return result;
}

BigInt g0_count(int g) {
  if (g < 0) return 0;
  return BigInt(floor_half(g + 4)) * floor_half(g + 5) - 2;
}

std::vector<ProfileTerm> profile_terms(int g) {
  std::vector<ProfileTerm> out;
  for (auto& f : delta_set(g)) {
    BigInt nf = n_f(g, f);
    BigInt bf = b_f(f);
    out.push_back({std::move(f), std::move(nf), std::move(bf)});
  }
  return out;
}

BigInt m_g(int g) {
  if (g < 0) return 0;
  BigInt total = g0_count(g);
  for (const auto& term : profile_terms(g)) total += term.n_f * term.b_f;
  return total;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// multisets[w] = number of multisets of items with total weight w, given
// kinds[w] distinct item kinds of weight w (Euler transform).
std::vector<BigInt> multiset_counts(const std::vector<BigInt>& kinds,
                                    int max_weight) {
  std::vector<BigInt> c(max_weight + 1, 0);
  for (int j = 1; j <= max_weight; ++j) {
    for (int d = 1; d <= j; ++d) {
      if (j % d == 0 && d < static_cast<int>(kinds.size())) {
        c[j] += d * kinds[d];
      }
    }
  }
  std::vector<BigInt> b(max_weight + 1, 0);
  b[0] = 1;
  for (int n = 1; n <= max_weight; ++n) {
    BigInt s = 0;
    for (int j = 1; j <= n; ++j) s += c[j] * b[n - j];
    b[n] = s / n;
  }
  return b;
}

template <typename Visit>
void for_each_normal_form_head(int g, Visit&& visit) {
  const int top = g + 1;
  for (int a = 0; a <= top; ++a) {
    for (int b = 0; a + b <= top; ++b) {
      for (int c = 0; a + b + 2 * c <= top; ++c) {
        for (int d = 0; a + b + 2 * c + 2 * d <= top; ++d) {
          if (b + d > 0 && c > 0) continue;
          visit(a, b, c, d, top - a - b - 2 * c - 2 * d);
        }
      }
    }
  }
}

}  // namespace

BigInt m_g_oracle(int g, int bound) {
  if (g > bound) {
    throw BoundExceeded("m_g_oracle: g = " + std::to_string(g) +
                        " exceeds bound " + std::to_string(bound));
  }
  if (g < 0) return 0;
  // a real factor of rank gamma has weight gamma + 1 in e + sum(gamma)
  std::vector<BigInt> kinds(g + 2, 0);
  for (int gamma = 1; gamma + 1 <= g + 1; ++gamma) {
    kinds[gamma + 1] = t_gamma(gamma);
  }
  const auto multisets = multiset_counts(kinds, g + 1);
  BigInt total = 0;
  for_each_normal_form_head(g, [&](int a, int b, int, int d, int rest) {
    if (rest == 0) {
      if (a + b + d > 0) total += 1;
    } else {
      total += multisets[rest];
    }
  });
  return total;
}

// ---------------------------------------------------------------------------
// Explicit type lists

std::string to_string(const RealSchottkyType& t) {
  std::ostringstream os;
  os << '(' << (t.orientable ? '+' : '-') << ';' << t.h << ';' << t.m << ')';
  return os.str();
}

std::vector<RealSchottkyType> real_schottky_types(int gamma) {
  std::vector<RealSchottkyType> out;
  for (int h = 0; 2 * h <= gamma; ++h) {
    out.push_back({true, h, gamma + 1 - 2 * h});
  }
  for (int h = 1; h <= gamma; ++h) {
    out.push_back({false, h, gamma + 1 - h});
  }
  return out;
}

Signature TopType::signature() const {
  Signature s{a, b, c, d, static_cast<int>(factors.size()), {}};
  for (const auto& f : factors) s.gammas.push_back(f.gamma);
  std::sort(s.gammas.begin(), s.gammas.end());
  return s;
}

Signature RefinedTopType::signature() const {
  Signature s{a, b, c, d, static_cast<int>(factors.size()), {}};
  for (const auto& f : factors) s.gammas.push_back(f.rank());
  std::sort(s.gammas.begin(), s.gammas.end());
  return s;
}

namespace {
std::string head_string(int a, int b, int c, int d) {
  std::ostringstream os;
  os << '(' << a << ',' << b << ',' << c << ',' << d;
  return os.str();
}
}  // namespace

std::string to_string(const TopType& t) {
  std::string s = head_string(t.a, t.b, t.c, t.d) + ';';
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i) s += ',';
    s += "R" + std::to_string(t.factors[i].gamma) + "#" +
         std::to_string(t.factors[i].label);
  }
  return s + ')';
}

std::string to_string(const RefinedTopType& t) {
  std::string s = head_string(t.a, t.b, t.c, t.d) + ';';
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i) s += ',';
    s += to_string(t.factors[i]);
  }
  return s + ')';
}

namespace {

// Sorted multisets of items (each with a weight) of total weight `budget`.
template <typename Item>
void for_each_item_multiset(const std::vector<Item>& items,
                            const std::vector<int>& weights, std::size_t from,
                            int budget, std::vector<Item>& current,
                            const std::function<void(const std::vector<Item>&)>&
                                visit) {
  if (budget == 0) {
    visit(current);
    return;
  }
  for (std::size_t i = from; i < items.size(); ++i) {
    if (weights[i] > budget) continue;
    current.push_back(items[i]);
    for_each_item_multiset(items, weights, i, budget - weights[i], current,
                           visit);
    current.pop_back();
  }
}

template <typename Item, typename Out, typename Make>
std::vector<Out> list_types(int g, const std::vector<Item>& items,
                            const std::vector<int>& weights, Make make) {
  std::vector<Out> out;
  for_each_normal_form_head(g, [&](int a, int b, int c, int d, int rest) {
    if (rest == 0) {
      if (a + b + d > 0) out.push_back(make(a, b, c, d, std::vector<Item>{}));
      return;
    }
    std::vector<Item> current;
    for_each_item_multiset<Item>(
        items, weights, 0, rest, current,
        [&](const std::vector<Item>& factors) {
          out.push_back(make(a, b, c, d, factors));
        });
  });
  return out;
}

void check_bound(int g, int bound, const char* who) {
  if (g > bound) {
    throw BoundExceeded(std::string(who) + ": g = " + std::to_string(g) +
                        " exceeds bound " + std::to_string(bound));
  }
}

}  // namespace

std::vector<TopType> enumerate_types(int g, int bound, std::size_t max_types) {
  check_bound(g, bound, "enumerate_types");
  if (g < 0) return {};
  if (m_g(g) > max_types) {
    throw BoundExceeded("enumerate_types: " + m_g(g).str() +
                        " types exceed the listing cap");
  }
  std::vector<RealFactorLabel> items;
  std::vector<int> weights;
  for (int gamma = 1; gamma + 1 <= g + 1; ++gamma) {
    const auto count = t_gamma(gamma).convert_to<std::int64_t>();
    for (std::int64_t label = 1; label <= count; ++label) {
      items.push_back({gamma, label});
      weights.push_back(gamma + 1);
    }
  }
  return list_types<RealFactorLabel, TopType>(
      g, items, weights,
      [](int a, int b, int c, int d, const std::vector<RealFactorLabel>& f) {
        return TopType{a, b, c, d, f};
      });
}

std::vector<RefinedTopType> enumerate_refined_types(int g, int bound,
                                                    std::size_t max_types) {
  check_bound(g, bound, "enumerate_refined_types");
  if (g < 0) return {};
  std::vector<RealSchottkyType> items;
  std::vector<int> weights;
  std::vector<BigInt> kinds(g + 2, 0);
  for (int gamma = 1; gamma + 1 <= g + 1; ++gamma) {
    for (const auto& t : real_schottky_types(gamma)) {
      items.push_back(t);
      weights.push_back(gamma + 1);
    }
    kinds[gamma + 1] = real_schottky_types(gamma).size();
  }
  // same head loop as the oracle, with refined label counts
  const auto multisets = multiset_counts(kinds, g + 1);
  BigInt expected = 0;
  for_each_normal_form_head(g, [&](int a, int b, int, int d, int rest) {
    if (rest == 0) {
      if (a + b + d > 0) expected += 1;
    } else {
      expected += multisets[rest];
    }
  });
  if (expected > max_types) {
    throw BoundExceeded("enumerate_refined_types: " + expected.str() +
                        " types exceed the listing cap");
  }
  return list_types<RealSchottkyType, RefinedTopType>(
      g, items, weights,
      [](int a, int b, int c, int d, const std::vector<RealSchottkyType>& f) {
        return RefinedTopType{a, b, c, d, f};
      });
}

}  // namespace schottky

namespace schottky {

namespace {

// code[i] = 2 * partner(i) + orientation bit of the pair containing i
using PairingCode = std::vector<int>;

PairingCode rotate(const PairingCode& code, int step) {
  const int n = static_cast<int>(code.size());
  PairingCode out(n);
  for (int i = 0; i < n; ++i) {
    const int partner = code[i] / 2;
    out[(i + step) % n] = 2 * ((partner + step) % n) + code[i] % 2;
  }
  return out;
}

bool is_orbit_minimum(const PairingCode& code, int step) {
  PairingCode cur = code;
  const int n = static_cast<int>(code.size());
  for (int k = 0; k < n; ++k) {
    cur = rotate(cur, step);
    if (cur < code) return false;
  }
  return true;
}

void for_each_pairing(PairingCode& code, int pairs_left,
                      const std::function<void(const PairingCode&)>& visit) {
  const int n = static_cast<int>(code.size());
  int first = 0;
  while (first < n && code[first] >= 0) ++first;
  if (first == n) {
    visit(code);
    return;
  }
  for (int j = first + 1; j < n; ++j) {
    if (code[j] >= 0) continue;
    for (int bit = 0; bit < 2; ++bit) {
      code[first] = 2 * j + bit;
      code[j] = 2 * first + bit;
      for_each_pairing(code, pairs_left - 1, visit);
      code[first] = code[j] = -1;
    }
  }
}

}  // namespace

PairingCensus pairing_census(int gamma) {
  if (gamma < 1 || gamma > 6) {
    throw std::invalid_argument("pairing_census: gamma must lie in 1..6");
  }
  PairingCensus census{0, 0, 0};
  PairingCode code(2 * gamma, -1);
  for_each_pairing(code, gamma, [&](const PairingCode& c) {
    census.labelled += 1;
    if (is_orbit_minimum(c, 2)) census.orbits_step_two += 1;
    if (is_orbit_minimum(c, 1)) census.orbits_step_one += 1;
  });
  return census;
}

}  // namespace schottky

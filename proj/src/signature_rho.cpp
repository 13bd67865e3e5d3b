#include "schottky/signature_rho.hpp"

#include <array>
#include <map>

#include "schottky/errors.hpp"

namespace schottky {

// ---------------------------------------------------------------------------
// Symbol words

namespace {

bool commutes_past(const SymbolLetter& f, const SymbolLetter& a) {
  return f.symbol.kind == SymbolKind::F && a.symbol.kind == SymbolKind::A &&
         a.symbol.i == f.symbol.i;
}

}  // namespace

SymbolWord::SymbolWord(std::vector<SymbolLetter> letters) {
  for (auto& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) {
      throw std::invalid_argument("SymbolWord: exponents must be +-1");
    }
    if (l.symbol.involution()) l.exponent = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<SymbolLetter> out;
    for (const auto& l : letters) {
      if (!out.empty() && out.back().symbol == l.symbol &&
          (l.symbol.involution() || out.back().exponent == -l.exponent)) {
        out.pop_back();
        changed = true;
        continue;
      }
      out.push_back(l);
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (commutes_past(out[i], out[i + 1])) {
        std::swap(out[i], out[i + 1]);
        changed = true;
      }
    }
    letters = std::move(out);
  }
  letters_ = std::move(letters);
}

SymbolWord SymbolWord::inverse() const {
  std::vector<SymbolLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return SymbolWord(std::move(out));
}

int SymbolWord::parity() const {
  int p = 0;
  for (const auto& l : letters_) p ^= l.symbol.reverses_orientation() ? 1 : 0;
  return p;
}

SymbolWord operator*(const SymbolWord& u, const SymbolWord& v) {
  std::vector<SymbolLetter> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return SymbolWord(std::move(all));
}

SymbolWord symbol_word(Symbol s, int exponent) {
  return SymbolWord({{s, exponent}});
}

std::string to_string(const Symbol& s) {
  static const char* names = "ELNFA";
  std::string out(1, names[static_cast<int>(s.kind)]);
  out += std::to_string(s.i);
  if (s.kind == SymbolKind::A) out += "," + std::to_string(s.k);
  return out;
}

std::string to_string(const SymbolWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += to_string(l.symbol);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schreier generators

namespace {

Symbol sym(SymbolKind kind, int i, int k = 0) { return {kind, i, k}; }
SymbolWord word(std::initializer_list<Symbol> symbols) {
  std::vector<SymbolLetter> letters;
  for (const auto& s : symbols) letters.push_back({s, 1});
  return SymbolWord(std::move(letters));
}
FreeWord x(int j) { return FreeWord::generator(j); }

// Schreier generator t s rep(t s)^-1 in the x-basis, for coset t = 0 (K+)
// and t = 1 (r K+).
using CosetImages = std::array<FreeWord, 2>;

struct RewriteSystem {
  Symbol r;
  std::vector<SymbolWord> basis;
  std::map<Symbol, CosetImages> table;
};

struct Counts {
  int a, b, c, d, e, A, B, C;
  std::vector<int> gammas;
};

Counts counts_of(const Signature& s) {
  int C = 0;
  for (int gamma : s.gammas) C += gamma;
  return {s.a, s.b, s.c, s.d, s.e, s.a + s.b, s.c + s.d, C, s.gammas};
}

// transversal E_1
RewriteSystem case_one(const Counts& n) {
  RewriteSystem rs{sym(SymbolKind::E, 1), {}, {}};
  const Symbol e1 = rs.r;
  rs.basis.resize(n.A + 2 * n.B + n.C + n.e - 1);
  auto set = [&](int j, SymbolWord w) { rs.basis[j - 1] = std::move(w); };

  rs.table[e1] = {FreeWord(), FreeWord()};
  for (int i = 2; i <= n.A; ++i) {
    const int j = i - 1;
    set(j, word({e1, sym(SymbolKind::E, i)}));
    rs.table[sym(SymbolKind::E, i)] = {x(j).inverse(), x(j)};
  }
  for (int i = 1; i <= n.c; ++i) {
    const int j = n.A + i - 1, j2 = n.A + n.B + i - 1;
    const Symbol l = sym(SymbolKind::L, i);
    set(j, word({l}));
    set(j2, word({e1, l, e1}));
    rs.table[l] = {x(j), x(j2)};
  }
  for (int i = 1; i <= n.d; ++i) {
    const int j = n.A + n.c + i - 1, j2 = n.A + n.B + n.c + i - 1;
    const Symbol nn = sym(SymbolKind::N, i);
    set(j, word({e1, nn}));
    set(j2, word({nn, e1}));
    rs.table[nn] = {x(j2), x(j)};
  }
  int offset = n.A + 2 * n.B;
  for (int f = 1; f <= n.e; ++f) {
    const int jf = n.A + 2 * n.B + n.C + f - 1;
    const Symbol ff = sym(SymbolKind::F, f);
    set(jf, word({e1, ff}));
    rs.table[ff] = {x(jf).inverse(), x(jf)};
    for (int k = 1; k <= n.gammas[f - 1]; ++k) {
      const int j = offset + k - 1;
      const Symbol a = sym(SymbolKind::A, f, k);
      set(j, word({a}));
      rs.table[a] = {x(j), x(jf) * x(j) * x(jf).inverse()};
    }
    offset += n.gammas[f - 1];
  }
  return rs;
}

// transversal F_1
RewriteSystem case_two(const Counts& n) {
  RewriteSystem rs{sym(SymbolKind::F, 1), {}, {}};
  const Symbol f1 = rs.r;
  const int g1 = n.gammas[0];
  rs.basis.resize(2 * n.B + n.C + n.e - 1);
  auto set = [&](int j, SymbolWord w) { rs.basis[j - 1] = std::move(w); };

  rs.table[f1] = {FreeWord(), FreeWord()};
  for (int f = 2; f <= n.e; ++f) {
    const int j = f - 1;
    set(j, word({f1, sym(SymbolKind::F, f)}));
    rs.table[sym(SymbolKind::F, f)] = {x(j).inverse(), x(j)};
  }
  for (int k = 1; k <= g1; ++k) {
    const int j = n.e + k - 1;
    const Symbol a = sym(SymbolKind::A, 1, k);
    set(j, word({a}));
    rs.table[a] = {x(j), x(j)};
  }
  const int base = n.e + g1;
  for (int i = 1; i <= n.c; ++i) {
    const int j = base + i - 1, j2 = base + n.B + i - 1;
    const Symbol l = sym(SymbolKind::L, i);
    set(j, word({l}));
    set(j2, word({f1, l, f1}));
    rs.table[l] = {x(j), x(j2)};
  }
  for (int i = 1; i <= n.d; ++i) {
    const int j = base + n.c + i - 1, j2 = base + n.B + n.c + i - 1;
    const Symbol nn = sym(SymbolKind::N, i);
    set(j, word({f1, nn}));
    set(j2, word({nn, f1}));
    rs.table[nn] = {x(j2), x(j)};
  }
  int offset = base + 2 * n.B;
  for (int f = 2; f <= n.e; ++f) {
    const int jf = f - 1;
    for (int k = 1; k <= n.gammas[f - 1]; ++k) {
      const int j = offset + k - 1;
      const Symbol a = sym(SymbolKind::A, f, k);
      set(j, word({a}));
      rs.table[a] = {x(j), x(jf) * x(j) * x(jf).inverse()};
    }
    offset += n.gammas[f - 1];
  }
  return rs;
}

// transversal N_1
RewriteSystem case_three(const Counts& n) {
  RewriteSystem rs{sym(SymbolKind::N, 1), {}, {}};
  const Symbol n1 = rs.r;
  rs.basis.resize(2 * n.d - 1 + 2 * n.c);
  auto set = [&](int j, SymbolWord w) { rs.basis[j - 1] = std::move(w); };

  set(1, word({n1, n1}));
  rs.table[n1] = {FreeWord(), x(1)};
  for (int i = 2; i <= n.d; ++i) {
    const Symbol ni = sym(SymbolKind::N, i);
    const int j = i, j2 = n.d + i - 1;
    set(j, word({n1, ni}));
    set(j2, SymbolWord({{n1, 1}, {ni, -1}}));
    rs.table[ni] = {x(j2).inverse(), x(j)};
  }
  for (int i = 1; i <= n.c; ++i) {
    const Symbol l = sym(SymbolKind::L, i);
    const int j = 2 * n.d - 1 + i, j2 = 2 * n.d - 1 + n.c + i;
    set(j, word({l}));
    set(j2, SymbolWord({{n1, 1}, {l, 1}, {n1, -1}}));
    rs.table[l] = {x(j), x(j2)};
  }
  return rs;
}

RewriteSystem system_for(const Signature& s) {
  const int g = validate_signature(s);
  if (g < 1) throw InvalidSignature("rank 0 signature has no rho_K");
  const Counts n = counts_of(s);
  switch (rho_case(s)) {
    case 1:
      return case_one(n);
    case 2:
      return case_two(n);
    default:
      return case_three(n);
  }
}

FreeWord rewrite_with(const RewriteSystem& rs, const SymbolWord& w) {
  int coset = 0;
  FreeWord out;
  for (const auto& l : w.letters()) {
    const auto it = rs.table.find(l.symbol);
    if (it == rs.table.end()) {
      throw PreconditionFailed("symbol " + to_string(l.symbol) +
                               " does not occur in this signature");
    }
    const int flip = l.symbol.reverses_orientation() ? 1 : 0;
    if (l.exponent > 0) {
      out = out * it->second[coset];
      coset ^= flip;
    } else {
      coset ^= flip;
      out = out * it->second[coset].inverse();
    }
  }
  if (coset != 0) {
    throw PreconditionFailed("word " + to_string(w) +
                             " reverses orientation");
  }
  return out;
}

}  // namespace

int rho_case(const Signature& s) {
  if (s.a + s.b > 0) return 1;
  if (s.e > 0) return 2;
  return 3;
}

Symbol transversal(const Signature& s) {
  switch (rho_case(s)) {
    case 1:
      return sym(SymbolKind::E, 1);
    case 2:
      return sym(SymbolKind::F, 1);
    default:
      return sym(SymbolKind::N, 1);
  }
}

std::vector<SymbolWord> kplus_basis(const Signature& s) {
  return system_for(s).basis;
}

FreeWord rewrite(const Signature& s, const SymbolWord& w) {
  return rewrite_with(system_for(s), w);
}

FgAuto rho_from_signature(const Signature& s) {
  const auto rs = system_for(s);
  const SymbolWord r = symbol_word(rs.r);
  std::vector<FreeWord> images;
  for (const auto& b : rs.basis) {
    images.push_back(rewrite_with(rs, r * b * r.inverse()));
  }
  const int g = static_cast<int>(images.size());
  return FgAuto(g, std::move(images));
}

// ---------------------------------------------------------------------------
// Comparison with the displayed tables

std::string to_string(TableStatus status) {
  switch (status) {
    case TableStatus::agree:
      return "agree";
    case TableStatus::disagree:
      return "disagree";
    case TableStatus::out_of_range:
      return "out_of_range";
    case TableStatus::not_displayed:
      return "not_displayed";
  }
  return "unknown";
}

namespace {

std::string xs(int j, bool inverse = false) {
  return "x" + std::to_string(j) + (inverse ? "^-1" : "");
}

// Displayed images, one optional text per generator. Indices that exceed
// the rank are kept as printed.
std::vector<std::optional<std::string>> displayed_images(const Signature& s,
                                                         int g) {
  const Counts n = counts_of(s);
  std::vector<std::optional<std::string>> out(g);
  auto put = [&](int j, std::string text) {
    if (j >= 1 && j <= g) out[j - 1] = std::move(text);
  };
  switch (rho_case(s)) {
    case 1: {
      for (int j = 1; j <= n.A - 1; ++j) put(j, xs(j, true));
      for (int j = n.A; j <= n.A + n.B - 1; ++j) put(j, xs(j + n.B + 1));
      for (int j = n.A + 2 * n.B; j <= n.A + 2 * n.B + n.C - 1; ++j) {
        const int partner = j + n.A + 2 * n.B + n.C + 1;
        put(j, xs(partner));
        put(partner, xs(j));
      }
      for (int j = n.A + 2 * n.B + n.C; j <= n.A + 2 * n.B + n.C + n.e - 1;
           ++j) {
        put(j, xs(j, true));
      }
      break;
    }
    case 2: {
      const int g1 = n.gammas[0];
      for (int j = 1; j <= n.e - 1; ++j) put(j, xs(j, true));
      for (int j = n.e; j <= n.e + g1 - 1; ++j) put(j, xs(j));
      for (int j = n.e + g1; j <= n.e + n.B + g1 - 1; ++j) {
        put(j, xs(j + n.B));
        put(j + n.B, xs(j));
      }
      int start = n.e + 2 * n.B + g1;
      for (int m = 2; m <= n.e; ++m) {
        for (int j = start; j < start + n.gammas[m - 1]; ++j) {
          put(j, xs(m - 1) + " " + xs(j) + " " + xs(m - 1, true));
        }
        start += n.gammas[m - 1];
      }
      break;
    }
    default: {
      const int B = n.d;  // the table assumes c = 0
      put(1, xs(1));
      for (int j = 2; j <= B; ++j) put(j, xs(1) + " " + xs(B + j - 1, true));
      for (int j = B + 1; j <= 2 * B - 1; ++j) {
        put(j, xs(1) + " " + xs(j - B + 1, true));
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<TableDiagnostic> table_diagnostics(const Signature& s) {
  const FgAuto rho = rho_from_signature(s);
  const int g = rho.rank();
  const auto shown = displayed_images(s, g);
  std::vector<TableDiagnostic> out;
  for (int j = 1; j <= g; ++j) {
    TableDiagnostic d{j, to_string(rho.image(j)), shown[j - 1],
                      TableStatus::not_displayed};
    if (d.displayed) {
      const FreeWord w = FreeWord::parse(*d.displayed);
      if (w.max_index() > g) {
        d.status = TableStatus::out_of_range;
      } else {
        d.status = w == rho.image(j) ? TableStatus::agree
                                     : TableStatus::disagree;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace schottky

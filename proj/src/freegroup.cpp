#include "schottky/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "schottky/errors.hpp"

namespace schottky {

// ---------------------------------------------------------------------------
// Words

namespace {
void push_reduced(std::vector<int>& out, int letter) {
  if (!out.empty() && out.back() == -letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}
}  // namespace

FreeWord::FreeWord(std::vector<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    if (l == 0) throw std::invalid_argument("FreeWord: zero letter");
    push_reduced(letters_, l);
  }
}

FreeWord FreeWord::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<int> letters;
  while (in >> tok) {
    if (tok == "1") continue;
    int sign = 1;
    std::string body = tok;
    if (body.size() > 3 && body.compare(body.size() - 3, 3, "^-1") == 0) {
      sign = -1;
      body.resize(body.size() - 3);
    }
    if (body.size() < 2 || body[0] != 'x' ||
        !std::all_of(body.begin() + 1, body.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("bad word token '" + tok + "'");
    }
    const int idx = std::stoi(body.substr(1));
    if (idx < 1) throw ParseError("generator index must be >= 1: " + tok);
    letters.push_back(sign * idx);
  }
  return FreeWord(std::move(letters));
}

int FreeWord::max_index() const {
  int m = 0;
  for (int l : letters_) m = std::max(m, std::abs(l));
  return m;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  for (int& l : w.letters_) l = -l;
  return w;
}

FreeWord word_multiply(const FreeWord& u, const FreeWord& v) {
  std::vector<int> out = u.letters();
  for (int l : v.letters()) push_reduced(out, l);
  return FreeWord(std::move(out));
}

FreeWord word_power(const FreeWord& u, int n) {
  const FreeWord base = n < 0 ? u.inverse() : u;
  FreeWord out;
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

std::string to_string(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += 'x' + std::to_string(std::abs(l));
    if (l < 0) s += "^-1";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Stallings folding with y-labels

namespace {

struct FoldEdge {
  int src;
  int dst;
  int letter;      // > 0
  FreeWord label;  // word in the y-basis read along src -> dst
  bool alive = true;
};

struct HalfEdge {
  int edge;
  bool forward;
};

}  // namespace

std::vector<FreeWord> invert_basis(int rank,
                                   const std::vector<FreeWord>& images) {
  if (static_cast<int>(images.size()) != rank) {
    throw NotAutomorphism("expected one image per generator");
  }
  std::vector<FoldEdge> edges;
  int next_vertex = 1;  // vertex 0 is the base point
  for (int i = 0; i < rank; ++i) {
    const auto& w = images[i].letters();
    if (w.empty()) throw NotAutomorphism("not injective: empty image");
    int prev = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int next = (k + 1 == w.size()) ? 0 : next_vertex++;
      FreeWord label = k == 0 ? FreeWord::generator(i + 1) : FreeWord();
      if (w[k] > 0) {
        edges.push_back({prev, next, w[k], std::move(label)});
      } else {
        edges.push_back({next, prev, -w[k], label.inverse()});
      }
      prev = next;
    }
  }

  auto tail = [&](const HalfEdge& h) {
    return h.forward ? edges[h.edge].src : edges[h.edge].dst;
  };
  auto head = [&](const HalfEdge& h) {
    return h.forward ? edges[h.edge].dst : edges[h.edge].src;
  };
  auto label = [&](const HalfEdge& h) {
    return h.forward ? edges[h.edge].label : edges[h.edge].label.inverse();
  };

  for (;;) {
    // look for two half-edges leaving one vertex with the same letter
    std::map<std::pair<int, int>, HalfEdge> seen;
    std::optional<std::pair<HalfEdge, HalfEdge>> clash;
    for (int e = 0; e < static_cast<int>(edges.size()) && !clash; ++e) {
      if (!edges[e].alive) continue;
      for (bool fwd : {true, false}) {
        const HalfEdge h{e, fwd};
        const std::pair<int, int> key{tail(h),
                                      fwd ? edges[e].letter : -edges[e].letter};
        auto [it, fresh] = seen.emplace(key, h);
        if (!fresh) {
          clash = std::make_pair(it->second, h);
          break;
        }
      }
    }
    if (!clash) break;

    auto [h1, h2] = *clash;
    int v1 = head(h1), v2 = head(h2);
    if (v1 == v2) {
      if (label(h1) != label(h2)) {
        throw NotAutomorphism("not injective: images satisfy a relation");
      }
      edges[h2.edge].alive = false;
      continue;
    }
    if (v2 == 0) {
      std::swap(h1, h2);
      std::swap(v1, v2);
    }
    // re-gauge v2 so that h2 carries the same label as h1, then merge
    const FreeWord g = label(h1).inverse() * label(h2);
    const FreeWord g_inv = g.inverse();
    for (auto& e : edges) {
      if (!e.alive) continue;
      if (e.src == v2) e.label = g * e.label;
      if (e.dst == v2) e.label = e.label * g_inv;
    }
    edges[h2.edge].alive = false;
    for (auto& e : edges) {
      if (e.src == v2) e.src = v1;
      if (e.dst == v2) e.dst = v1;
    }
  }

  std::vector<FreeWord> inverse(rank);
  std::vector<bool> have(rank, false);
  for (const auto& e : edges) {
    if (!e.alive) continue;
    if (e.src != 0 || e.dst != 0 || e.letter > rank) {
      throw NotAutomorphism("not surjective: images span a proper subgroup");
    }
    have[e.letter - 1] = true;
    inverse[e.letter - 1] = e.label;
  }
  if (std::find(have.begin(), have.end(), false) != have.end()) {
    throw NotAutomorphism("not surjective: a generator is missed");
  }
  return inverse;
}

// ---------------------------------------------------------------------------
// Automorphisms

FgAuto::FgAuto(int rank, std::vector<FreeWord> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank < 1) throw std::invalid_argument("FgAuto: rank must be >= 1");
  for (const auto& w : images_) {
    if (w.max_index() > rank) {
      throw std::invalid_argument("FgAuto: letter beyond rank in " +
                                  to_string(w));
    }
  }
  invert_basis(rank_, images_);
}

FgAuto FgAuto::from_trusted(int rank, std::vector<FreeWord> images) {
  FgAuto phi;
  phi.rank_ = rank;
  phi.images_ = std::move(images);
  return phi;
}

FgAuto FgAuto::identity(int rank) {
  std::vector<FreeWord> images;
  for (int j = 1; j <= rank; ++j) images.push_back(FreeWord::generator(j));
  return from_trusted(rank, std::move(images));
}

FgAuto FgAuto::conjugation(const FreeWord& w, int rank) {
  std::vector<FreeWord> images;
  for (int j = 1; j <= rank; ++j) {
    images.push_back(w * FreeWord::generator(j) * w.inverse());
  }
  return from_trusted(rank, std::move(images));
}

FgAuto FgAuto::inverse() const {
  return from_trusted(rank_, invert_basis(rank_, images_));
}

FreeWord auto_apply(const FgAuto& phi, const FreeWord& w) {
  FreeWord out;
  for (int l : w.letters()) {
    if (std::abs(l) > phi.rank()) {
      throw RankMismatch("letter x" + std::to_string(std::abs(l)) +
                         " beyond rank " + std::to_string(phi.rank()));
    }
    const FreeWord& img = phi.image(std::abs(l));
    out = out * (l > 0 ? img : img.inverse());
  }
  return out;
}

FgAuto auto_compose(const FgAuto& phi, const FgAuto& psi) {
  if (phi.rank() != psi.rank()) {
    throw RankMismatch("cannot compose automorphisms of ranks " +
                       std::to_string(phi.rank()) + " and " +
                       std::to_string(psi.rank()));
  }
  std::vector<FreeWord> images;
  for (const auto& w : psi.images()) images.push_back(auto_apply(phi, w));
  return FgAuto::from_trusted(phi.rank(), std::move(images));
}

FgAuto auto_power(const FgAuto& phi, int n) {
  const FgAuto base = n < 0 ? phi.inverse() : phi;
  FgAuto out = FgAuto::identity(phi.rank());
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

FgAuto nielsen(int k, int g) {
  if (g < 2) throw std::invalid_argument("nielsen: rank must be >= 2");
  std::vector<FreeWord> images;
  for (int j = 1; j <= g; ++j) images.push_back(FreeWord::generator(j));
  switch (k) {
    case 1:
      std::swap(images[0], images[1]);
      break;
    case 2:
      for (int j = 1; j <= g; ++j) {
        images[j - 1] = FreeWord::generator(j % g + 1);
      }
      break;
    case 3:
      images[0] = FreeWord({-1});
      break;
    case 4:
      images[0] = FreeWord({1, 2});
      break;
    default:
      throw std::invalid_argument("nielsen: k must lie in 1..4");
  }
  return FgAuto::from_trusted(g, std::move(images));
}

std::optional<FreeWord> is_inner(const FgAuto& phi) {
  const auto& y = phi.image(1).letters();
  const std::size_t n = y.size();
  std::size_t p = 0;
  while (2 * p + 1 < n && y[p] == -y[n - 1 - p]) ++p;
  if (2 * p + 1 != n || y[p] != 1) return std::nullopt;
  const FreeWord u(std::vector<int>(y.begin(), y.begin() + p));

  int bound = 0;
  for (const auto& w : phi.images()) bound = std::max<int>(bound, w.size());
  bound += 1;
  for (int k = 0; k <= bound; ++k) {
    for (int sign : {1, -1}) {
      if (k == 0 && sign < 0) continue;
      const FreeWord w = u * word_power(FreeWord::generator(1), sign * k);
      if (FgAuto::conjugation(w, phi.rank()) == phi) return w;
    }
  }
  return std::nullopt;
}

std::optional<int> order_in_out(const FgAuto& phi, int max_order) {
  FgAuto power = phi;
  for (int n = 1; n <= max_order; ++n) {
    if (is_inner(power)) return n;
    power = power * phi;
  }
  return std::nullopt;
}

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix a = m;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size();
  IntMatrix out(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < y.size(); ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][k] * y[k][j];
  return out;
}

std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; every division is exact over the integers
  const auto n = static_cast<std::int64_t>(m.size());
  std::vector<std::int64_t> c(n + 1, 0);
  c[n] = 1;
  IntMatrix mk(n, std::vector<std::int64_t>(n, 0));
  for (std::int64_t k = 1; k <= n; ++k) {
    for (std::int64_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    mk = multiply(m, mk);
    std::int64_t tr = 0;
    for (std::int64_t i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / k;
  }
  return c;
}

std::vector<std::int64_t> elementary_divisors(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest non-zero absolute value in the remaining block
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (!found || std::abs(a[i][j]) < std::abs(a[pr][pc]))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const auto q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const auto q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols && clean; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            clean = false;
          }
    }
    out.push_back(std::abs(a[t][t]));
  }
  out.resize(std::min(rows, cols), 0);
  return out;
}

IntMatrix abelianize(const FgAuto& phi) {
  const int g = phi.rank();
  IntMatrix m(g, std::vector<std::int64_t>(g, 0));
  for (int j = 0; j < g; ++j) {
    for (int l : phi.images()[j].letters()) {
      m[std::abs(l) - 1][j] += l > 0 ? 1 : -1;
    }
  }
  const auto det = determinant(m);
  if (det != 1 && det != -1) {
    throw NotInvertibleMatrix("abelianization has determinant " +
                              std::to_string(det));
  }
  return m;
}

std::string to_string(const FgAuto& phi) {
  std::string s;
  for (int j = 1; j <= phi.rank(); ++j) {
    if (j > 1) s += "; ";
    s += "x" + std::to_string(j) + " -> " + to_string(phi.image(j));
  }
  return s;
}

}  // namespace schottky

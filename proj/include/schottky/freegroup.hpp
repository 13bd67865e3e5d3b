#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace schottky {

/// A freely reduced word in x_1..x_g. Letter +j is x_j, -j is x_j^-1.
class FreeWord {
 public:
  FreeWord() = default;
  /// Reduces the input; throws std::invalid_argument on a zero letter.
  explicit FreeWord(std::vector<int> letters);

  static FreeWord generator(int j) { return FreeWord({j}); }

  /// Grammar: `x<idx>[^-1]` tokens separated by whitespace; "" or "1" is the
  /// empty word. Throws ParseError.
  static FreeWord parse(const std::string& text);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  /// Largest generator index used (0 for the empty word).
  int max_index() const;

  FreeWord inverse() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<int> letters_;
};

FreeWord word_multiply(const FreeWord& u, const FreeWord& v);
inline FreeWord operator*(const FreeWord& u, const FreeWord& v) {
  return word_multiply(u, v);
}
inline FreeWord word_inverse(const FreeWord& u) { return u.inverse(); }
FreeWord word_power(const FreeWord& u, int n);
/// Space-separated tokens; the empty word prints as "1".
std::string to_string(const FreeWord& w);

/// An automorphism of F_g given by the images of x_1..x_g.
class FgAuto {
 public:
  /// Throws NotAutomorphism unless the images form a free basis, and
  /// std::invalid_argument when an image uses a letter beyond the rank.
  FgAuto(int rank, std::vector<FreeWord> images);

  static FgAuto identity(int rank);
  /// x_j -> w x_j w^-1.
  static FgAuto conjugation(const FreeWord& w, int rank);

  int rank() const { return rank_; }
  const std::vector<FreeWord>& images() const { return images_; }
  /// Image of x_j, 1-based.
  const FreeWord& image(int j) const { return images_.at(j - 1); }

  /// Skips the basis check; for images already known to form a basis
  /// (products and inverses of automorphisms).
  static FgAuto from_trusted(int rank, std::vector<FreeWord> images);

  FgAuto inverse() const;

  friend bool operator==(const FgAuto&, const FgAuto&) = default;

 private:
  FgAuto() = default;
  int rank_ = 0;
  std::vector<FreeWord> images_;
};

/// (phi o psi)(x_j) = phi(psi(x_j)). Throws RankMismatch.
FgAuto auto_compose(const FgAuto& phi, const FgAuto& psi);
inline FgAuto operator*(const FgAuto& phi, const FgAuto& psi) {
  return auto_compose(phi, psi);
}
FreeWord auto_apply(const FgAuto& phi, const FreeWord& w);
FgAuto auto_power(const FgAuto& phi, int n);

/// Inverse images when the words form a free basis of F_rank, computed by
/// Stallings folding of the rose they span. Throws NotAutomorphism with the
/// reason (not injective / not surjective) otherwise.
std::vector<FreeWord> invert_basis(int rank,
                                   const std::vector<FreeWord>& images);

/// rho_1 swap x1,x2; rho_2 cycle x_j -> x_{j+1}, x_g -> x_1;
/// rho_3 x1 -> x1^-1; rho_4 x1 -> x1 x2. Requires g >= 2 and k in 1..4.
FgAuto nielsen(int k, int g);

/// The unique w with phi(x_j) = w x_j w^-1 for all j, if phi is inner.
std::optional<FreeWord> is_inner(const FgAuto& phi);

/// Smallest n in 1..max_order with phi^n inner.
std::optional<int> order_in_out(const FgAuto& phi, int max_order);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Column j is the exponent-sum vector of phi(x_j). Throws
/// NotInvertibleMatrix when the determinant is not +-1.
IntMatrix abelianize(const FgAuto& phi);
std::int64_t determinant(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);

/// Coefficients c_0..c_n of det(t I - m) = sum c_k t^k (c_n = 1).
std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& m);
/// Diagonal of the Smith normal form, non-negative, each dividing the next.
std::vector<std::int64_t> elementary_divisors(const IntMatrix& m);

std::string to_string(const FgAuto& phi);

}  // namespace schottky

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schottky/enumeration.hpp"
#include "schottky/freegroup.hpp"

namespace schottky {

/// Generators of the free-product decomposition of an extended Schottky
/// group: E_i (reflections, then imaginary reflections), L_i (loxodromics),
/// N_i (glide-reflections), F_j (the reflection of the j-th real factor) and
/// A_{j,k} (the loxodromic generators of that factor).
enum class SymbolKind { E, L, N, F, A };

struct Symbol {
  SymbolKind kind = SymbolKind::E;
  int i = 1;
  int k = 0;  // only used by A_{i,k}

  bool involution() const {
    return kind == SymbolKind::E || kind == SymbolKind::F;
  }
  bool reverses_orientation() const {
    return kind == SymbolKind::E || kind == SymbolKind::N ||
           kind == SymbolKind::F;
  }
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct SymbolLetter {
  Symbol symbol;
  int exponent = 1;
  friend bool operator==(const SymbolLetter&, const SymbolLetter&) = default;
};

/// A word in the symbols above, kept reduced under E^2 = F^2 = 1,
/// free cancellation, and F_j A_{j,k} = A_{j,k} F_j (F moved to the right).
class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<SymbolLetter> letters);

  const std::vector<SymbolLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  SymbolWord inverse() const;
  /// Number of orientation-reversing letters, mod 2.
  int parity() const;

  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;

 private:
  std::vector<SymbolLetter> letters_;
};

SymbolWord operator*(const SymbolWord& u, const SymbolWord& v);
SymbolWord symbol_word(Symbol s, int exponent = 1);
/// "E1 L2^-1 A1,2", or "1" for the empty word.
std::string to_string(const Symbol& s);
std::string to_string(const SymbolWord& w);

/// 1 when a + b > 0 (transversal E_1), 2 when a + b = 0 and e > 0
/// (transversal F_1), 3 otherwise (transversal N_1).
int rho_case(const Signature& s);
Symbol transversal(const Signature& s);

/// The free basis x_1..x_g of the orientation-preserving half, as words in
/// the symbols. Case 3 with c > 0 appends L_i and N_1 L_i N_1^-1.
std::vector<SymbolWord> kplus_basis(const Signature& s);

/// Reidemeister-Schreier rewriting of an orientation-preserving symbol word
/// into the x-basis. Throws PreconditionFailed on an orientation-reversing
/// word.
FreeWord rewrite(const Signature& s, const SymbolWord& w);

/// The automorphism x_j -> r x_j r^-1 induced by the transversal element r.
/// Throws InvalidSignature for malformed signatures or rank 0.
FgAuto rho_from_signature(const Signature& s);

enum class TableStatus { agree, disagree, out_of_range, not_displayed };
std::string to_string(TableStatus status);

/// One line of the comparison between the derived rho_K and the image table
/// displayed in the literature for the signature's case.
struct TableDiagnostic {
  int index = 1;
  std::string derived;
  std::optional<std::string> displayed;
  TableStatus status = TableStatus::not_displayed;
};

std::vector<TableDiagnostic> table_diagnostics(const Signature& s);

}  // namespace schottky

#pragma once

#include <cstddef>
#include <cstdint>

namespace schottky {

/// Process-wide default tolerance for projective comparisons (1e-9 unless
/// changed). Every operation that takes a `tol` argument falls back to this.
double default_tolerance() noexcept;
/// Throws std::invalid_argument unless 0 < tol < 1e-3.
void set_default_tolerance(double tol);

/// Run configuration shared by the CLI and the verification suite.
struct Config {
  double tolerance = 1e-9;
  int enumeration_bound = 12;
  int word_length_cap = 8;
  std::size_t point_cap = 1'000'000;
  std::uint64_t seed = 20241019;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

}  // namespace schottky

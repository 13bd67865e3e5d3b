#pragma once

#include <string>
#include <vector>

#include "schottky/config.hpp"

namespace schottky {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the twelve acceptance checks in order. Exceptions inside a check
/// are caught and reported as a failure of that check.
std::vector<CriterionResult> run_acceptance(const Config& config);

/// "PASS  3  real Schottky counts  (detail, 0.01 s)"; the timing is left
/// out unless requested so that output is reproducible.
std::string format_result(const CriterionResult& r, bool with_time = false);

}  // namespace schottky

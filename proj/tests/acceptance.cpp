// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any failure.
#include <iostream>

#include "schottky/acceptance.hpp"

int main() {
  schottky::Config config;
  int failures = 0;
  for (const auto& r : schottky::run_acceptance(config)) {
    std::cout << schottky::format_result(r, true) << '\n';
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}

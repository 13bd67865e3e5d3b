#include "schottky/config.hpp"

#include <atomic>
#include <stdexcept>

namespace schottky {

namespace {
std::atomic<double> g_tolerance{1e-9};

void check_tolerance(double tol) {
  if (!(tol > 0.0 && tol < 1e-3)) {
    throw std::invalid_argument("tolerance must lie in (0, 1e-3)");
  }
}
}  // namespace

double default_tolerance() noexcept { return g_tolerance.load(); }

void set_default_tolerance(double tol) {
  check_tolerance(tol);
  g_tolerance.store(tol);
}

void Config::validate() const {
  check_tolerance(tolerance);
  if (enumeration_bound <= 0 || word_length_cap <= 0 || point_cap == 0) {
    throw std::invalid_argument("caps and bounds must be positive");
  }
}

}  // namespace schottky

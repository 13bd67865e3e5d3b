#pragma once

#include <complex>
#include <random>

#include "schottky/freegroup.hpp"
#include "schottky/mobius.hpp"

namespace schottky::testing {

inline Complex random_complex(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline MobiusMap random_map(std::mt19937_64& rng,
                            Orientation o = Orientation::preserving) {
  for (;;) {
    const Complex a = random_complex(rng), b = random_complex(rng),
                  c = random_complex(rng), d = random_complex(rng);
    if (std::abs(a * d - b * c) > 0.3) return MobiusMap(a, b, c, d, o);
  }
}

inline SpherePoint random_point(std::mt19937_64& rng) {
  return SpherePoint::finite(random_complex(rng, 3.0));
}

// Product of `length` Nielsen generators and their inverses.
inline FgAuto random_nielsen_product(std::mt19937_64& rng, int g, int length) {
  std::uniform_int_distribution<int> pick(1, 4);
  FgAuto phi = FgAuto::identity(g);
  for (int i = 0; i < length; ++i) {
    const FgAuto n = nielsen(pick(rng), g);
    phi = phi * (rng() % 2 ? n : n.inverse());
  }
  return phi;
}

inline FreeWord random_word(std::mt19937_64& rng, int g, int length) {
  std::uniform_int_distribution<int> pick(1, g);
  std::vector<int> letters;
  for (int i = 0; i < length; ++i) {
    letters.push_back(rng() % 2 ? pick(rng) : -pick(rng));
  }
  return FreeWord(letters);
}

}  // namespace schottky::testing

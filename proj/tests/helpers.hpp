#pragma once

#include <cmath>

#include "rnl/core.hpp"
#include "rnl/quantum.hpp"
#include "rnl/sampling.hpp"

namespace rnl::test {

// Deterministic random inputs for property-style tests.
inline JointDistribution random_joint(SplitMix64& rng) {
  double w[4];
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.next_unit());
    total += x;
  }
  return {w[0] / total, w[1] / total, w[2] / total, w[3] / total};
}

inline ConditionalTable random_conditional(SplitMix64& rng) {
  const double a = rng.next_unit();
  const double b = rng.next_unit();
  return {{a, 1.0 - a}, {b, 1.0 - b}};
}

inline TwoPhotonState random_two_class_state(SplitMix64& rng) {
  const double w = 0.05 + 0.9 * rng.next_unit();
  const double phase = 6.283185307179586 * rng.next_unit();
  return two_class_state({std::sqrt(w), 0.0},
                         {std::sqrt(1.0 - w) * std::cos(phase),
                          std::sqrt(1.0 - w) * std::sin(phase)});
}

}  // namespace rnl::test

#pragma once

#include <cstdint>
#include <random>

namespace rankcrypt {

/// Every sampling routine draws raw 64-bit words from this engine, so a seed
/// fixes all outputs bit-for-bit across standard libraries.
using Rng = std::mt19937_64;

/// Seed used for trial `index` of a batch started from `base`.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  return base + index;
}

/// Uniform integer in [0, bound) by rejection on raw engine output.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace rankcrypt

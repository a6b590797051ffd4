#pragma once

#include <cstdint>
#include <random>

namespace entsched {

/// splitmix64 finalizer; used everywhere a seed has to be derived from
/// another seed plus an index. Stable across platforms and builds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Canonical uniform draw in [0, 1). Avoids std::uniform_real_distribution,
/// whose output sequence is implementation-defined.
inline double uniform01(std::mt19937_64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform draw in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) noexcept {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace entsched

#pragma once

#include <cstdint>

namespace oranopt::rng {

// splitmix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based draw keyed by (seed, kind, indices). Stateless, so adding
// an entity never perturbs another entity's draws, and results are
// bit-identical across platforms.
inline std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t kind,
                                  std::uint64_t a = 0, std::uint64_t b = 0,
                                  std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed ^ 0xD6E8FEB86659FD93ULL);
  h = splitmix64(h ^ kind);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

// Uniform in [0, 1) with 53 random mantissa bits.
inline double uniform01(std::uint64_t seed, std::uint64_t kind,
                        std::uint64_t a = 0, std::uint64_t b = 0,
                        std::uint64_t c = 0) {
  return static_cast<double>(hash_counter(seed, kind, a, b, c) >> 11) *
         0x1.0p-53;
}

inline double uniform_in(double lo, double hi, std::uint64_t seed,
                         std::uint64_t kind, std::uint64_t a = 0,
                         std::uint64_t b = 0, std::uint64_t c = 0) {
  return lo + uniform01(seed, kind, a, b, c) * (hi - lo);
}

}  // namespace oranopt::rng

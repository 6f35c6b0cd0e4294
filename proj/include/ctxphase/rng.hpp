#pragma once

#include <cstdint>

namespace ctxphase::rng {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so pair draws can be sharded across workers without coordination
// and replayed from the seed alone.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter) {
  return splitmix64(splitmix64((seed ^ 0xA0761D6478BD642FULL) + stream) + counter);
}

constexpr bool coin(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return (mix(seed, stream, counter) >> 63) != 0;
}

inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(mix(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Stream tags, one per independent consumer of a run seed.
inline constexpr std::uint64_t kStreamClassDraw = 1;
inline constexpr std::uint64_t kStreamIsolated = 2;
inline constexpr std::uint64_t kStreamPolicyA = 3;
inline constexpr std::uint64_t kStreamPolicyB = 4;
inline constexpr std::uint64_t kStreamXContextClass = 5;

}  // namespace ctxphase::rng

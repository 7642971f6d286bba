#pragma once

#include <cstdint>
#include <random>

namespace dissectree {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Generator for trial `trial` of size slot `slot` under a master seed.
/// Streams depend only on (seed, slot, trial), never on scheduling.
Rng make_stream(std::uint64_t seed, std::uint64_t slot, std::uint64_t trial);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1].
inline double uniform01_open_left(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return dist(rng);
}

}  // namespace dissectree

#pragma once

#include <cstdint>
#include <random>

namespace hetpca {

// Seeded engine used for every simulated draw.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of independent stream `stream` under master seed `seed`:
///   derive(seed, stream) = splitmix64(splitmix64(seed) ^ splitmix64(~stream))
/// Streams never share engine state, so trials can run in any order or on any
/// thread and still reproduce the same draws.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(~stream));
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace hetpca

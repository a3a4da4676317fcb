#pragma once

#include <cstdint>
#include <random>

namespace mdlcausa {

// All randomness in the library flows through Rng: std::mt19937_64 seeded
// with a SplitMix64-scrambled 64-bit value. Independent tasks (pairs,
// repetitions, sample sizes) get their own stream via substream(seed, index),
// so results never depend on evaluation order.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the index-th child stream of `seed`.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace mdlcausa

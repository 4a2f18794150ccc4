#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace awafs::sim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent stream seeds from one base seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Named substreams of a run seed. Each consumer gets its own generator so that
/// adding draws in one place never perturbs another.
enum class Stream : std::uint64_t {
  Workload = 1,
  Spray = 2,
};

inline Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(mix_seed(mix_seed(seed) ^ mix_seed((static_cast<std::uint64_t>(stream) << 32) + index)));
}

// The distributions below are spelled out rather than taken from <random> so
// that sequences are identical across standard library implementations.

/// Uniform in [0, 1) with 53 bits of precision.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n));
}

/// Exponential with the given rate (events per unit).
inline double exponential(Rng& rng, double rate) { return -std::log1p(-uniform01(rng)) / rate; }

}  // namespace awafs::sim

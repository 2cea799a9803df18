#pragma once

// Deterministic random-number helpers. All experiment code seeds generators
// through these functions so that a (seed, run_index) pair reproduces the
// same scenario on any platform.

#include <cstdint>
#include <random>

namespace rrfcov {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for a given run and purpose tag.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t run_index,
                                    std::uint64_t tag) {
  return splitmix64(splitmix64(seed + run_index) ^ splitmix64(tag));
}

// Uniform double in [0, 1) built from the top 53 bits; identical bit stream
// on every platform, unlike std::uniform_real_distribution.
inline double canonical(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * canonical(g);
}

}  // namespace rrfcov

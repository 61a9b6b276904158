#pragma once

#include <cstdint>

namespace rotlab {

// Counter-based keyed generator (splitmix64 finalizer over a keyed
// counter).  Draws are indexed by (seed, index), so sampling a set is
// independent of scan order and parallel-safe.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t keyed_u64(uint64_t seed, uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
}

// Uniform double in [0,1) with 53 random bits.
inline double keyed_uniform(uint64_t seed, uint64_t index) {
  return static_cast<double>(keyed_u64(seed, index) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) draw; p snapped to the 2^-64 grid so that p = 0 never
// fires and p = 1 always fires.
inline bool keyed_bernoulli(uint64_t seed, uint64_t index, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
  uint64_t threshold = static_cast<uint64_t>(scaled);
  return keyed_u64(seed, index) < threshold;
}

}  // namespace rotlab

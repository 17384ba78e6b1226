#pragma once

#include <cstdint>
#include <initializer_list>

namespace minvset::rng {

// Counter-based pseudo-randomness: every draw is a pure hash of
// (seed, stream tags...), so results do not depend on evaluation order or on
// how work is split across threads.

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_keys(std::initializer_list<uint64_t> keys) {
  uint64_t h = 0x2545f4914f6cdd1dULL;
  for (uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// Uniform double in [0, 1).
inline double u01(uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Uniform index in [0, n). n must be positive.
inline std::size_t index(uint64_t h, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(n)) >> 64);
}

}  // namespace minvset::rng

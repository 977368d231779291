#pragma once

// Small sampling helpers with a fixed definition, so seeded runs produce the
// same numbers with any standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace disc {

using Rng = std::mt19937_64;

/// Uniform integer in [0, m) by Lemire's multiply-and-reject method. m >= 1.
inline std::size_t uniform_index(Rng& rng, std::size_t m) {
  const auto range = static_cast<std::uint64_t>(m);
  unsigned __int128 prod = static_cast<unsigned __int128>(rng()) * range;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      prod = static_cast<unsigned __int128>(rng()) * range;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::size_t>(prod >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

/// Fisher-Yates shuffle driven by uniform_index.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace disc

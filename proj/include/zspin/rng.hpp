#pragma once

#include <cstdint>
#include <random>

namespace zspin {

// splitmix64, used only to derive substream seeds from one user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// The one engine used everywhere: std::mt19937_64. Its output sequence is
// fixed by the standard, so seeded runs are identical across platforms.
// Substream k of a seed is the engine seeded with the (k+1)-th splitmix64
// output of that seed.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t derived = 0;
  for (std::uint64_t i = 0; i <= index; ++i) derived = splitmix64(s);
  return std::mt19937_64(derived);
}

// 53-bit uniform in [0,1). std's distribution classes are
// implementation-defined, so all draws go through these helpers.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via 128-bit multiply-shift.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(eng()) * n) >> 64);
}

}  // namespace zspin

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "destwalk/errors.hpp"

namespace destwalk {

// Every stochastic draw in this library comes from Rng, a xoshiro256++
// generator seeded by expanding one 64-bit word through the splitmix64
// finalizer. Replica streams are derived with derive_replica_seed()
// (simulate.hpp), which is injective in the replica index.
//
// Word consumption per primitive, for reproducibility audits:
//   next_u64        1 word
//   uniform01       1 word (53-bit mantissa, [0,1))
//   uniform_index   1 word per rejection round (unbiased bounded draw)
//   normal          2 words (Box-Muller, cosine branch only)
//   exponential     1 word (inverse CDF)

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr double kPi = 3.14159265358979323846;

// splitmix64 output function; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += kGolden;
      word = mix64(x);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = kGolden;  // all-zero state is the one forbidden seed
    }
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw DimensionError("uniform_index: n must be >= 1");
    const std::uint64_t n64 = n;
    const std::uint64_t threshold = (0ULL - n64) % n64;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return static_cast<std::size_t>(r % n64);
    }
  }

  // Standard normal via Box-Muller; consumes exactly two words.
  double normal() noexcept {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Exponential with the given rate, via the inverse CDF.
  double exponential(double rate) noexcept {
    return -std::log1p(-uniform01()) / rate;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace destwalk

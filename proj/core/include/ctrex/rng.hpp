#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace ctrex {

// Deterministic 64-bit-seedable generator (xoshiro256++ state, splitmix64
// seeding). The same seed always reproduces the same stream, independent of
// platform thread count or scheduling. Child streams derived from
// (master seed, index) are pairwise decorrelated, so parallel call sites can
// own one stream each without sharing.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
    // An all-zero state would lock the generator; splitmix64 makes this
    // practically impossible, but keep the guard explicit.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  // Stream for (master seed, index): mixes the index through splitmix64 so
  // that neighbouring indices land in unrelated regions of the seed space.
  static Rng child(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(derive_seed(master_seed, index));
  }

  static std::uint64_t derive_seed(std::uint64_t master_seed,
                                   std::uint64_t index) {
    std::uint64_t x = master_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound) via masked rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound < 2) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw = next_u64() & mask;
    while (draw >= bound) draw = next_u64() & mask;
    return draw;
  }

  // Standard real normal via Box-Muller; the second variate of each pair is
  // cached so consecutive calls consume one uniform pair per two normals.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Circularly symmetric standard complex normal: (g1 + i g2)/sqrt(2),
  // so E|z|^2 = 1 and E[z^2] = 0.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  static constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ctrex

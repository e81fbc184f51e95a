#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cvqkd::detail {

// SplitMix64 output at a given counter offset from the seed. Counter-based,
// so disjoint index ranges give independent substreams without sequencing.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with substream seeding through disjoint SplitMix64 counters,
// one 4-word state block per stream id.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    for (int i = 0; i < 4; ++i)
      state_[i] = splitmix64_at(seed, 4 * stream + static_cast<std::uint64_t>(i));
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
      state_[0] = 0x9E3779B97F4A7C15ULL;  // all-zero state is the lone fixed point
  }

  std::uint64_t next() {
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

  // Uniform double in (0, 1]; never 0, so logs stay finite.
  double uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // One Box-Muller pair of independent standard normals.
  void normal_pair(double& z0, double& z1) {
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double phi = 2.0 * std::numbers::pi * v;
    z0 = r * std::cos(phi);
    z1 = r * std::sin(phi);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace cvqkd::detail

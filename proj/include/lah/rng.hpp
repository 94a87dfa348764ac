#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lah {

// Identifies one reproducible stream: identical (seed, stream) give identical
// output on every platform; distinct stream ids give independent streams.
// Monte Carlo code uses stream = trial index so results never depend on the
// worker count.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// xoshiro256** (Blackman/Vigna) seeded through splitmix64 from (seed, stream).
// The uniform doubles take the top 53 bits, bounded integers use rejection,
// normals use Box-Muller; none of it goes through <random> distributions,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(RngHandle h) {
    std::uint64_t x = h.seed + 0x9E3779B97F4A7C15ULL * (h.stream + 1);
    for (auto& word : state_) word = splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); rejects exact zeros (used where logs are taken).
  double next_unit_open() {
    double u;
    do u = next_unit();
    while (u == 0.0);
    return u;
  }

  // Uniform integer in [0, bound), unbiased by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("Rng::below: bound must be positive");
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return next_unit() < p; }

  double next_normal() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  double next_exponential() { return -std::log(next_unit_open()); }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace lah

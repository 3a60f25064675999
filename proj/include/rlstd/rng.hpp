#pragma once

#include <cstdint>
#include <cmath>

namespace rlstd {

// Deterministic 64-bit generator (xorshift-star over a splitmix-seeded
// state). Self-contained so that experiment replays are byte-identical
// regardless of standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(split_mix(seed + 0x9E3779B97F4A7C15ULL)) {}

  // Derives an independent stream for sub-task `index` of a master seed.
  static Rng derive(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = split_mix(master_seed ^ (0xBF58476D1CE4E5B9ULL * (index + 1)));
    return Rng(s);
  }

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; caches the second deviate.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    double mag = std::sqrt(-2.0 * std::log(u1));
    double ang = 6.283185307179586476925286766559 * u2;
    spare_ = mag * std::sin(ang);
    has_spare_ = true;
    return mag * std::cos(ang);
  }

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

 private:
  static std::uint64_t split_mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rlstd

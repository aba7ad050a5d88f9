#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nonresp {

/// Seeded random stream with reproducible draws.
///
/// Wraps std::mt19937_64 (fully specified by the standard) and implements the
/// bounded-integer and Gaussian transforms by hand, so a given seed yields the
/// same draw sequence on every build. Streams are splittable: child(r) derives
/// an independent stream from (master seed, r), which is what keeps
/// multi-threaded replication runs bit-identical to single-threaded ones.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Child stream r of a master seed. Stream indices need not be contiguous.
  static Rng child(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t s = master_seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return Rng(mix64(mix64(s)));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, bound), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, pairwise).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nonresp

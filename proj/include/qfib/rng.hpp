#pragma once

#include <cmath>
#include <cstdint>

namespace qfib {

// SplitMix64: counter-based, trivially splittable, bit-identical across
// platforms. Good enough statistically for sampling measurement outcomes
// and building Ginibre matrices; not a crypto generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for (seed, index) pairs, e.g. one per Monte Carlo
  // trial. The state walks a single additive orbit, so derived states must
  // be scattered through the output mix rather than built from multiples of
  // the increment; otherwise streams become shifted copies of each other.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = scramble(seed + 0x9E3779B97F4A7C15ULL);
    const std::uint64_t b = scramble(stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL);
    return Rng(a ^ b);
  }

  std::uint64_t next_u64() { return scramble(state_ += 0x9E3779B97F4A7C15ULL); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Box-Muller; consumes two uniforms per pair, caches the second.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace qfib

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spatialgen::core {

// splitmix64 finalizer. Also used to derive replication seeds.
inline std::uint64_t mix_bits(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Seed for substream k of a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  return mix_bits(seed + kGoldenGamma * (k + 1));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

// Seedable splitmix64 generator. The draw sequence is a pure function of the
// seed, stable within one build of the library. Distributions are implemented
// here rather than with <random> so that sequences do not depend on the
// standard library vendor.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix_bits(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_below(static_cast<std::uint64_t>(n)));
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    has_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

  // Poisson count: sequential search (Knuth) for small means, PTRS
  // transformed rejection for large means.
  long long next_poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      long long k = 0;
      double p = 1.0;
      do {
        ++k;
        p *= next_double();
      } while (p > limit);
      return k - 1;
    }
    return poisson_ptrs(mean);
  }

  RngStream substream(std::uint64_t k) const { return RngStream(mix_seed(seed_, k)); }

 private:
  // Hoermann's PTRS rejection sampler, valid for mean >= 10.
  long long poisson_ptrs(double mean) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      const double u = next_double() - 0.5;
      const double v = next_double();
      const double us = 0.5 - std::fabs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
      if (lhs <= k * log_mean - mean - std::lgamma(k + 1.0)) {
        return static_cast<long long>(k);
      }
    }
  }

  std::uint64_t seed_;
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spatialgen::core

// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_RNG_HPP
#define LRIS_RNG_HPP

#include <complex>
#include <cstdint>

namespace lris {

/// Counter-based pseudo-random generator (SplitMix64 core).
///
/// A generator is addressed by (seed, stream). Distinct streams derived
/// from the same seed produce statistically independent sequences, so
/// Monte Carlo trials keyed by trial index give results that do not
/// depend on worker scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t h = mix(seed + 0x9E3779B97F4A7C15ULL);
    h ^= mix(stream * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
    state_ = mix(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via the Marsaglia polar method.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Circularly symmetric complex Gaussian with total variance `var`.
  std::complex<double> cgaussian(double var = 1.0) {
    const double s = std::sqrt(var / 2.0);
    return {s * gaussian(), s * gaussian()};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lris

#endif  // LRIS_RNG_HPP

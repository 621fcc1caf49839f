#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace optidual {

// Counter-based generator: every draw is a hash of (key, counter), so streams
// can be split per trial and replayed independent of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  // Derive an independent substream; drawing from the parent afterwards does
  // not disturb it.
  CounterRng split(std::uint64_t stream) const {
    return CounterRng(key_, stream + 1);
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal, Box-Muller
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // independent N(0,1) real and imaginary parts
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  // uniform integer in [0, bound)
  std::uint64_t uniform_below(std::uint64_t bound) {
    // modulo bias is negligible for bound << 2^64
    return next_u64() % bound;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Stable seed derivation for (base seed, trial, purpose) triples.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial,
                                 std::uint64_t tag) {
  CounterRng rng(base, trial * 0x100 + tag);
  return rng.next_u64();
}

}  // namespace optidual

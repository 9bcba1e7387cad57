#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace bargmann {

/// Counter-based splittable 64-bit generator.
///
/// Output i of a stream is mix(key + (i+1) * golden), so a stream is fully
/// described by its key and position. `split(k)` derives an independent
/// child stream without advancing the parent, which is how parallel kernels
/// hand one stream to each work item and stay reproducible regardless of
/// thread count.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), key_(mix(seed ^ kSeedSalt)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ + kGolden * ++counter_); }

  /// Child stream `stream`; the parent is left untouched.
  Rng split(std::uint64_t stream) const noexcept {
    return Rng(mix(key_ ^ mix(stream + kStreamSalt)), Derived{});
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1).
  std::complex<double> complex_gaussian() {
    std::normal_distribution<double> normal;
    const double re = normal(*this);
    const double im = normal(*this);
    return {re, im};
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  struct Derived {};
  Rng(std::uint64_t key, Derived) noexcept : seed_(key), key_(key) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC909ull;
  static constexpr std::uint64_t kStreamSalt = 0xBB67AE8584CAA73Bull;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bargmann

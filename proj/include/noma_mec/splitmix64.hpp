#ifndef NOMA_MEC_SPLITMIX64_HPP
#define NOMA_MEC_SPLITMIX64_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace noma_mec {

/// SplitMix64 (Steele, Lea & Flood): a Weyl sequence with step
/// 0x9E3779B97F4A7C15 passed through a 64-bit finalizer. Satisfies
/// UniformRandomBitGenerator. The output sequence is fixed by the seed on every
/// platform, which std::uniform_real_distribution does not promise, so the
/// floating-point draws below are done by hand.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Independent stream derived from the next output.
  SplitMix64 split() noexcept { return SplitMix64((*this)()); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) noexcept {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace noma_mec

#endif  // NOMA_MEC_SPLITMIX64_HPP

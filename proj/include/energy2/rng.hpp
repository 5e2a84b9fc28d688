#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace energy2 {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream key from a base seed and a path of indices, e.g.
/// (seed, case, replication, permutation). Different paths give unrelated keys.
std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path) noexcept;

/// Counter-based generator: the i-th output is mix64(key + i * gamma), so a
/// stream is fully identified by its key and position. Value type; copies
/// continue independently from the same position.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    counter_ += kGamma;
    return mix64(key_ + counter_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }
  /// Uniform integer in [0, bound), unbiased (Lemire).
  std::size_t below(std::size_t bound) noexcept;

  double normal() noexcept;
  double exponential() noexcept;
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the U^(1/a) boost.
  double gamma(double shape) noexcept;
  /// log of a Gamma(shape, 1) variate, accurate when the variate underflows.
  double log_gamma(double shape) noexcept;

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace energy2

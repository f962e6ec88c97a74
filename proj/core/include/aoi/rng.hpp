#pragma once

#include <cstdint>
#include <limits>

namespace aoi {

// SplitMix64 finaliser; also used to derive substream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Counter-based generator: output k is mix64(key + k * golden). Each
// (seed, replication) pair gets its own key, so parallel replications never
// share a stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t key) noexcept : state_(key) {}

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Uniform on (0, 1] with 53 random bits.
  double uniform_open() noexcept;

  // Exponential variate by inversion, independent of the standard library.
  double exponential(double rate) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace aoi

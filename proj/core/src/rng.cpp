#include "aoi/rng.hpp"

#include <cmath>

namespace aoi {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(mix64(mix64(seed) ^ mix64(index + kGolden)));
}

SplitMix64::result_type SplitMix64::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::uniform_open() noexcept {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

}  // namespace aoi

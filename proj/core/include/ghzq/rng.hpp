#pragma once

// Counter-based random streams: the numbers drawn for global sample index k
// depend only on (seed, k, stream), never on which worker handles k.

#include <cstdint>
#include <limits>

namespace ghzq {

/// SplitMix64 output function (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream tags keep the sampler, noise and thinning draws independent even
/// when they share a seed.
enum class StreamTag : std::uint64_t {
  Sampler = 0,
  Noise = 1,
  Thinning = 2,
};

/// SplitMix64 generator keyed by (seed, index, tag). Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t index,
                       StreamTag tag = StreamTag::Sampler) noexcept
      : state_(mix64(seed + kGamma * (static_cast<std::uint64_t>(tag) + 1)) ^
               mix64(index ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

/// Single 64-bit hash of (seed, index, tag); used where one key per index is
/// enough.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index,
                                     StreamTag tag) noexcept {
  CounterRng rng(seed, index, tag);
  return rng();
}

}  // namespace ghzq

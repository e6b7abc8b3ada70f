#pragma once

#include <cstdint>
#include <limits>

namespace pamc {

/// Stream identifiers mixed into the RNG key so that different uses of
/// randomness within one step never share a stream.
enum class StreamPurpose : std::uint64_t {
  init = 1,
  resample = 2,
  sweep = 3,
  kick = 4,
  user = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** generator.
///
/// Streams are derived from a key (seed, replica, step, purpose) rather than
/// from a shared generator, so the numbers a replica sees depend only on
/// that key and never on which thread ran it or in which order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept { reseed(seed); }

  /// Independent stream for the given key.
  static Rng for_stream(std::uint64_t seed, std::uint64_t replica, std::uint64_t step,
                        StreamPurpose purpose) noexcept {
    std::uint64_t h = seed;
    std::uint64_t k = splitmix64(h);
    for (std::uint64_t part : {replica, step, static_cast<std::uint64_t>(purpose)}) {
      std::uint64_t mix = k ^ (part * 0xd1b54a32d192ed03ULL);
      k = splitmix64(mix);
    }
    return Rng(k);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool coin() noexcept { return ((*this)() >> 63) != 0; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  void reseed(std::uint64_t seed) noexcept {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
  }

  std::uint64_t s_[4] = {};
};

}  // namespace pamc

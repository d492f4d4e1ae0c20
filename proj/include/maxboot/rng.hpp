#pragma once

#include <cstdint>

namespace maxboot {

/// Descriptor of a reproducible random stream. The same (seed, stream)
/// pair always reproduces the same draw sequence bit-for-bit; distinct
/// stream ids give statistically independent sequences, so concurrent
/// tasks can each own a stream id derived from their index.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngStream with_stream(std::uint64_t s) const { return {seed, s}; }
};

// xoshiro256++ with state derived from (seed, stream) via SplitMix64.
// Integer-only core, so sequences are identical across platforms.
class Rng {
 public:
  explicit Rng(RngStream s) noexcept;
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : Rng(RngStream{seed, stream}) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0,1) with 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the open interval (0,1): values (k + 1/2) * 2^-53.
  /// Safe to feed into log() or an inverse CDF.
  double uniform_oo() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unbiased uniform integer on [0, n), n >= 1 (Lemire's method).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal draw, inverse-CDF transform of uniform_oo().
  double normal() noexcept;

 private:
  std::uint64_t state_[4];
};

/// Fisher-Yates shuffle of data[0..n), consuming n-1 index draws.
template <typename T>
void shuffle(T* data, std::size_t n, Rng& rng) {
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    T tmp = data[i - 1];
    data[i - 1] = data[j];
    data[j] = tmp;
  }
}

}  // namespace maxboot

#include "maxboot/rng.hpp"

namespace maxboot {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  std::uint64_t x = z;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngStream s) noexcept {
  // Hash the seed, then key the stream id with that hash so that both
  // coordinates are fully mixed before expansion into the 256-bit state.
  std::uint64_t z = s.seed;
  std::uint64_t h0 = splitmix64(z);
  std::uint64_t h1 = splitmix64(z);
  std::uint64_t z2 = s.stream ^ h0;
  state_[0] = splitmix64(z2) ^ h1;
  state_[1] = splitmix64(z2);
  state_[2] = splitmix64(z2);
  state_[3] = splitmix64(z2);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t Rng::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  std::uint64_t lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace maxboot

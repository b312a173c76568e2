#pragma once

#include <cstdint>
#include <random>

namespace tvwalk {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Sub-seeds are derive_seed(master, stream), so the
// stream a piece of work draws from depends only on its stream id and never
// on which worker executes it.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream = 0) {
  return Rng(derive_seed(master, stream));
}

// Uniform integer in [0, bound) without modulo bias (Lemire's multiply-shift
// with rejection). Independent of the standard library's distribution code, so
// sequences are identical across toolchains.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  using u128 = unsigned __int128;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace tvwalk

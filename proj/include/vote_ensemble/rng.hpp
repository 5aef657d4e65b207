#pragma once

#include <cstdint>
#include <random>

namespace vote_ensemble {

/// splitmix64 finalizer: a bijective avalanche over 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of a family rooted at `base`.
constexpr std::uint64_t substream_seed(std::uint64_t base,
                                       std::uint64_t index) noexcept {
  return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Conversions to doubles and bounded integers are done here rather
/// than through <random> distributions so results are identical across
/// standard library implementations. Every conversion consumes exactly one
/// engine draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., bound - 1} via a 128-bit multiply (bound >= 1).
  std::uint64_t uniform_index(std::uint64_t bound) {
    const unsigned __int128 product =
        static_cast<unsigned __int128>(engine_()) * bound;
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Seed for a family of independent child streams; consumes one draw.
  std::uint64_t spawn_base() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vote_ensemble

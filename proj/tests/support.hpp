#pragma once

// Hand-rolled generators for property tests. Each property runs a fixed
// number of cases from a fixed seed, so failures replay exactly.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vote_ensemble/rng.hpp"

namespace ve_test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_.uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng_.uniform_index(hi - lo + 1));
  }
  double real(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }
  bool coin() { return rng_.uniform_index(2) == 1; }

  /// Mixes ordinary magnitudes with zeros, signed zeros, and extremes.
  double any_double() {
    switch (rng_.uniform_index(8)) {
      case 0: return 0.0;
      case 1: return -0.0;
      case 2: return real(-1e300, 1e300);
      case 3: return real(-1e-300, 1e-300);
      case 4: return static_cast<double>(integer(-5, 5));
      default: return real(-10.0, 10.0);
    }
  }

  std::vector<double> reals(std::size_t count, double lo, double hi) {
    std::vector<double> out(count);
    for (auto& v : out) v = real(lo, hi);
    return out;
  }

  vote_ensemble::Rng& rng() { return rng_; }

 private:
  vote_ensemble::Rng rng_;
};

inline constexpr int kCases = 200;

}  // namespace ve_test

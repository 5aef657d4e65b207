#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::core {

/// Uniform k-subsets of {0, ..., n-1} by partial Fisher-Yates shuffle.
///
/// Each draw consumes exactly k values from the stream. The scratch
/// permutation is restored after every draw, so the output depends only on
/// (n, k, stream state) and not on earlier draws.
class Subsampler {
 public:
  explicit Subsampler(std::size_t n);

  std::size_t population() const noexcept { return perm_.size(); }

  /// Fills `out` with k distinct indices in draw order; 1 <= k <= n.
  void draw(std::size_t k, Rng& rng, std::vector<std::size_t>& out);

 private:
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> swaps_;
};

/// k distinct indices drawn uniformly without replacement from [0, n).
std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t k, Rng& rng);

}  // namespace vote_ensemble::core

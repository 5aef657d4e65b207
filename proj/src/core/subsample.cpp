#include "vote_ensemble/core/subsample.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::core {

Subsampler::Subsampler(std::size_t n) : perm_(n) {
  if (n == 0) throw InvalidArgument("subsample population must be positive");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
}

void Subsampler::draw(std::size_t k, Rng& rng, std::vector<std::size_t>& out) {
  const std::size_t n = perm_.size();
  if (k == 0 || k > n) {
    throw InvalidArgument("subsample size " + std::to_string(k) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  swaps_.resize(k);
  out.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(perm_[i], perm_[j]);
    swaps_[i] = j;
    out[i] = perm_[i];
  }
  for (std::size_t i = k; i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
}

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) {
    throw InvalidArgument("subsample size " + std::to_string(k) +
                          " exceeds population " + std::to_string(n));
  }
  Subsampler sampler(n);
  std::vector<std::size_t> out;
  sampler.draw(k, rng, out);
  return out;
}

}  // namespace vote_ensemble::core

#pragma once

// Estimators for the base learner's output distribution p_k(θ), the gap
// η_{k,δ}, and the empirical-process tail T_k(t).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "vote_ensemble/core/ensemble.hpp"
#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/error.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::theory {

struct PkEntry {
  Model model;
  double p_hat = 0.0;
  double se = 0.0;  // sqrt(p(1-p)/trials); 0 for exact tables
};

/// Estimated output probabilities, sorted by descending p_hat then ModelKey.
struct PkTable {
  std::vector<PkEntry> entries;
  std::uint64_t trials = 0;
  std::size_t k = 0;

  double max_probability() const;
  /// p_hat for `key`, 0 when absent.
  double probability(const ModelKey& key) const;
};

/// Builds a sorted table from raw counts out of `trials`.
PkTable make_pk_table(const std::map<ModelKey, std::pair<Model, std::uint64_t>>& counts,
                      std::uint64_t trials, std::size_t k, bool exact);

/// Draws a fresh batch of size k.
template <class Obs>
using BatchSampler = std::function<core::SampleBatch<Obs>(std::size_t k, Rng& rng)>;

/// Monte-Carlo estimate of p_k: trains the base learner on `trials`
/// independent fresh batches of size k. Trial t uses substream t of a base
/// drawn from `rng`.
template <class Obs>
PkTable estimate_pk(const core::BaseLearner<Obs>& base, const BatchSampler<Obs>& sampler,
                    std::size_t k, std::uint64_t trials, Rng& rng) {
  if (trials == 0) throw InvalidArgument("estimate_pk needs at least one trial");
  if (k == 0) throw InvalidArgument("estimate_pk needs k >= 1");
  const auto base_seed = rng.spawn_base();
  std::map<ModelKey, std::pair<Model, std::uint64_t>> counts;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng trial_rng(substream_seed(base_seed, t));
    const auto batch = sampler(k, trial_rng);
    auto model = base(batch.items(), trial_rng);
    auto [it, inserted] = counts.try_emplace(model.key(), model, 0);
    ++it->second.second;
  }
  return make_pk_table(counts, trials, k, false);
}

inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exact subsample frequencies p̂_k over the empirical measure: trains the
/// (deterministic) base learner on every k-subset in lexicographic order.
/// This is the B = ∞ limit of the MoVE tally.
template <class Obs>
PkTable exact_phat_enumeration(const core::BaseLearner<Obs>& base,
                               const core::SampleBatch<Obs>& data, std::size_t k) {
  const std::size_t n = data.size();
  if (k == 0 || k > n) throw InvalidArgument("enumeration needs 1 <= k <= n");
  const auto subsets = binomial(n, k);
  if (subsets > kEnumerationBudget) {
    throw InvalidArgument("C(n, k) = " + std::to_string(subsets) +
                          " exceeds the enumeration budget");
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Obs> buffer(k, data[0]);
  std::map<ModelKey, std::pair<Model, std::uint64_t>> counts;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) buffer[i] = data[idx[i]];
    Rng unused(0);
    auto model = base(std::span<const Obs>(buffer), unused);
    auto [it, inserted] = counts.try_emplace(model.key(), model, 0);
    ++it->second.second;
    // Next k-subset in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return make_pk_table(counts, subsets, k, true);
}

/// η̂ = max over all entries - max over entries outside `delta_optimal`
/// (the latter is 0 when every entry is δ-optimal).
double eta_from_pk(const PkTable& table, const std::set<ModelKey>& delta_optimal);

struct TailEstimate {
  double p_hat = 0.0;
  double se = 0.0;
  std::uint64_t trials = 0;
};

/// Monte-Carlo estimate of T_k(t) = P(max_θ |mean loss on k fresh samples - L(θ)| > t)
/// over a finite model set with known true risks.
template <class Obs>
TailEstimate estimate_tk(const core::LossOracle<Obs>& loss, std::span<const Model> models,
                         std::span<const double> true_risks, const BatchSampler<Obs>& sampler,
                         std::size_t k, double threshold, std::uint64_t trials, Rng& rng) {
  if (models.empty() || models.size() != true_risks.size()) {
    throw InvalidArgument("estimate_tk needs one true risk per model");
  }
  if (trials == 0 || k == 0) throw InvalidArgument("estimate_tk needs trials, k >= 1");
  const auto base_seed = rng.spawn_base();
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng trial_rng(substream_seed(base_seed, t));
    const auto batch = sampler(k, trial_rng);
    double worst = 0.0;
    for (std::size_t s = 0; s < models.size(); ++s) {
      double total = 0.0;
      for (const auto& z : batch) total += loss(models[s], z);
      worst = std::max(worst, std::abs(total / static_cast<double>(batch.size()) - true_risks[s]));
    }
    if (worst > threshold) ++hits;
  }
  TailEstimate out;
  out.trials = trials;
  out.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  out.se = std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(trials));
  return out;
}

}  // namespace vote_ensemble::theory

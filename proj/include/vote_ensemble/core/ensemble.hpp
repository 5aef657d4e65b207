#pragma once

// Model-level voting ensembles over a pluggable base learner.
//
// MoVE trains the base learner on B uniform subsamples and returns the most
// frequent model. ROVE retrieves candidate models on B1 subsamples, then runs
// B2 ballots on fresh subsamples where every candidate within ε of the
// ballot's best empirical loss receives a vote. ROVEs is ROVE with the data
// split: retrieval and ε selection use the first floor(n/2) observations,
// voting uses the rest.
//
// Every ballot b draws from its own stream substream_seed(base, b), where
// `base` is taken from the caller's stream, so results depend only on the
// caller's stream state and never on evaluation order.

#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "vote_ensemble/core/ensemble_config.hpp"
#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/core/subsample.hpp"
#include "vote_ensemble/core/vote.hpp"
#include "vote_ensemble/error.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::core {

/// The algorithm 𝒜: maps training data and a random stream to a model.
template <class Obs>
using BaseLearner = std::function<Model(std::span<const Obs>, Rng&)>;

/// l(θ, z): loss of a model on one observation.
template <class Obs>
using LossOracle = std::function<double(const Model&, const Obs&)>;

/// Per-(model, observation) memo is used while |S| * n stays at or below this.
inline constexpr std::size_t kLossCacheLimit = 10'000'000;

namespace detail {

template <class Obs>
Model train_on_subsample(const BaseLearner<Obs>& base, const SampleBatch<Obs>& data,
                         std::span<const std::size_t> indices, std::size_t offset,
                         std::vector<Obs>& buffer, Rng& rng, std::size_t ballot) {
  buffer.clear();
  for (auto i : indices) buffer.push_back(data[offset + i]);
  try {
    return base(std::span<const Obs>(buffer), rng);
  } catch (const std::exception& e) {
    throw LearnerFailure(ballot, e.what());
  }
}

template <class Obs>
class LossCache {
 public:
  LossCache(const std::vector<Model>& models, const LossOracle<Obs>& loss,
            const SampleBatch<Obs>& data)
      : models_(models), loss_(loss), data_(data) {
    if (models.size() * data.size() <= kLossCacheLimit) {
      memo_.assign(models.size() * data.size(), std::numeric_limits<double>::quiet_NaN());
    }
  }

  double operator()(std::size_t model, std::size_t index) {
    if (memo_.empty()) return evaluate(model, index);
    double& slot = memo_[model * data_.size() + index];
    if (std::isnan(slot)) slot = evaluate(model, index);
    return slot;
  }

 private:
  double evaluate(std::size_t model, std::size_t index) const {
    const double value = loss_(models_[model], data_[index]);
    if (!std::isfinite(value)) throw NonFiniteLoss(model, index);
    return value;
  }

  const std::vector<Model>& models_;
  const LossOracle<Obs>& loss_;
  const SampleBatch<Obs>& data_;
  std::vector<double> memo_;
};

/// Mean losses of every model on `ballots` subsamples of size k drawn from
/// data[offset, offset + population).
template <class Obs>
BallotLosses ballot_losses(LossCache<Obs>& cache, std::size_t models, std::size_t ballots,
                           std::size_t k, std::size_t offset, std::size_t population,
                           std::uint64_t base_seed) {
  Subsampler sampler(population);
  std::vector<std::size_t> idx;
  std::vector<double> means(ballots * models);
  for (std::size_t b = 0; b < ballots; ++b) {
    Rng rng(substream_seed(base_seed, b));
    sampler.draw(k, rng, idx);
    for (std::size_t s = 0; s < models; ++s) {
      double total = 0.0;
      for (auto i : idx) total += cache(s, offset + i);
      means[b * models + s] = total / static_cast<double>(k);
    }
  }
  return BallotLosses(ballots, models, std::move(means));
}

struct Partition {
  std::size_t offset;
  std::size_t population;
};

inline Partition retrieval_partition(std::size_t n, bool split) {
  return split ? Partition{0, n / 2} : Partition{0, n};
}

inline Partition voting_partition(std::size_t n, bool split) {
  return split ? Partition{n / 2, n - n / 2} : Partition{0, n};
}

template <class Obs>
BallotLosses epsilon_selection_ballots(LossCache<Obs>& cache, std::size_t models,
                                       std::size_t n, const EnsembleConfig& cfg,
                                       Rng& rng) {
  const auto part = retrieval_partition(n, cfg.split);
  return ballot_losses(cache, models, cfg.B2, cfg.k2, part.offset, part.population,
                       rng.spawn_base());
}

template <class Obs>
EnsembleOutput vote_with_cache(const std::vector<Model>& candidates, LossCache<Obs>& cache,
                               std::size_t n, const EnsembleConfig& cfg, double epsilon,
                               Rng& rng) {
  const auto part = voting_partition(n, cfg.split);
  const auto losses = ballot_losses(cache, candidates.size(), cfg.B2, cfg.k2, part.offset,
                                    part.population, rng.spawn_base());
  const auto counts = losses.votes(epsilon);
  EnsembleOutput out;
  out.tally.total_ballots = cfg.B2;
  out.tally.entries.reserve(candidates.size());
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    out.tally.entries.push_back({candidates[s], counts[s]});
  }
  out.model = out.tally.entries[out.tally.winner_index()].model;
  out.retrieved = candidates;
  out.epsilon = epsilon;
  return out;
}

inline void require_candidates(const std::vector<Model>& candidates) {
  if (candidates.empty()) throw InvalidArgument("retrieved model set is empty");
}

}  // namespace detail

/// Algorithm: majority vote over B models trained on uniform k-subsamples.
/// Ties go to the smallest ModelKey.
template <class Obs>
EnsembleOutput run_move(const BaseLearner<Obs>& base, const SampleBatch<Obs>& data,
                        const EnsembleConfig& cfg, Rng& rng) {
  const std::size_t n = data.size();
  cfg.validate_move(n);
  const auto base_seed = rng.spawn_base();
  Subsampler sampler(n);
  std::vector<std::size_t> idx;
  std::vector<Obs> buffer;
  buffer.reserve(cfg.k);
  std::map<ModelKey, TallyEntry> counts;
  for (std::size_t b = 0; b < cfg.B; ++b) {
    Rng ballot_rng(substream_seed(base_seed, b));
    sampler.draw(cfg.k, ballot_rng, idx);
    auto model = detail::train_on_subsample(base, data, idx, 0, buffer, ballot_rng, b);
    auto [it, inserted] = counts.try_emplace(model.key(), TallyEntry{model, 0});
    ++it->second.count;
  }
  EnsembleOutput out;
  out.tally.total_ballots = cfg.B;
  for (auto& [key, entry] : counts) out.tally.entries.push_back(std::move(entry));
  out.model = out.tally.entries[out.tally.winner_index()].model;
  return out;
}

/// Phase I: models trained on B1 subsamples of size k1, duplicates coalesced
/// by ModelKey in first-seen order.
template <class Obs>
std::vector<Model> retrieve_phase1(const BaseLearner<Obs>& base, const SampleBatch<Obs>& data,
                                   const EnsembleConfig& cfg, Rng& rng) {
  const std::size_t n = data.size();
  cfg.validate_rove(n);
  const auto part = detail::retrieval_partition(n, cfg.split);
  const auto base_seed = rng.spawn_base();
  Subsampler sampler(part.population);
  std::vector<std::size_t> idx;
  std::vector<Obs> buffer;
  buffer.reserve(cfg.k1);
  std::set<ModelKey> seen;
  std::vector<Model> candidates;
  for (std::size_t b = 0; b < cfg.B1; ++b) {
    Rng ballot_rng(substream_seed(base_seed, b));
    sampler.draw(cfg.k1, ballot_rng, idx);
    auto model =
        detail::train_on_subsample(base, data, idx, part.offset, buffer, ballot_rng, b);
    if (seen.insert(model.key()).second) candidates.push_back(std::move(model));
  }
  return candidates;
}

/// Phase II: ε-optimality vote over the retrieved candidates.
template <class Obs>
EnsembleOutput epsilon_vote_phase2(const std::vector<Model>& candidates,
                                   const LossOracle<Obs>& loss, const SampleBatch<Obs>& data,
                                   const EnsembleConfig& cfg, double epsilon, Rng& rng) {
  detail::require_candidates(candidates);
  cfg.validate_rove(data.size());
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
  detail::LossCache<Obs> cache(candidates, loss, data);
  return detail::vote_with_cache(candidates, cache, data.size(), cfg, epsilon, rng);
}

/// The fixed batch of B2 ε-selection ballots that select_epsilon searches
/// over. Drawn from the retrieval partition.
template <class Obs>
BallotLosses epsilon_selection_ballots(const std::vector<Model>& candidates,
                                       const LossOracle<Obs>& loss,
                                       const SampleBatch<Obs>& data,
                                       const EnsembleConfig& cfg, Rng& rng) {
  detail::require_candidates(candidates);
  cfg.validate_rove(data.size());
  detail::LossCache<Obs> cache(candidates, loss, data);
  return detail::epsilon_selection_ballots(cache, candidates.size(), data.size(), cfg, rng);
}

/// Adaptive threshold: smallest ε whose maximal vote fraction reaches 1/2.
template <class Obs>
double select_epsilon(const std::vector<Model>& candidates, const LossOracle<Obs>& loss,
                      const SampleBatch<Obs>& data, const EnsembleConfig& cfg, Rng& rng) {
  return select_epsilon(epsilon_selection_ballots(candidates, loss, data, cfg, rng));
}

/// Retrieval followed by the ε-optimality vote. Consumes three draws from
/// `rng` (retrieval, ε selection, voting) whether or not ε is adaptive.
template <class Obs>
EnsembleOutput run_rove(const BaseLearner<Obs>& base, const LossOracle<Obs>& loss,
                        const SampleBatch<Obs>& data, const EnsembleConfig& cfg, Rng& rng) {
  auto candidates = retrieve_phase1(base, data, cfg, rng);
  detail::LossCache<Obs> cache(candidates, loss, data);
  Rng selection_rng(rng.spawn_base());
  double epsilon = cfg.epsilon.fixed_value();
  if (cfg.epsilon.is_adaptive()) {
    epsilon = select_epsilon(detail::epsilon_selection_ballots(
        cache, candidates.size(), data.size(), cfg, selection_rng));
  }
  return detail::vote_with_cache(candidates, cache, data.size(), cfg, epsilon, rng);
}

}  // namespace vote_ensemble::core

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>

#include "vote_ensemble/core/ensemble.hpp"
#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

/// Everything the harness needs to run one problem family: a data
/// generator, the SAA base learner, the per-observation loss, and a
/// population oracle for the excess risk L(θ) - min L.
///
/// Maximization problems are negated so `loss` is always minimized.
template <class Obs>
struct StochasticProblem {
  std::string name;
  bool discrete_models = true;
  std::function<core::SampleBatch<Obs>(std::size_t n, Rng& rng)> generate;
  core::BaseLearner<Obs> learner;
  core::LossOracle<Obs> loss;
  std::function<double(const Model&)> true_risk;
  std::function<double(const Model&)> excess_risk;
  /// Oracle provenance (seeds, draw counts, standard errors) for manifests.
  std::function<std::map<std::string, std::string>()> oracle_metadata;
};

}  // namespace vote_ensemble::problems

#pragma once

// Maximum weight matching on a complete bipartite graph with nonnegative
// random edge weights. With nonnegative weights a maximum weight matching can
// always be completed to a perfect one, so the decision is a permutation
// (row i is matched to column perm[i]).

#include <cstddef>
#include <span>
#include <vector>

#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

inline constexpr std::size_t kMaxMatchingSide = 16;

/// Edge weight law: a constant, or scale * Pareto(shape).
struct EdgeWeight {
  bool random = false;
  double value = 0.0;  // constant weight, or Pareto scale when random
  double shape = 2.1;

  double mean() const;
};

struct MatchingParams {
  std::size_t side = 5;
  std::vector<EdgeWeight> edges;  // row-major side x side

  void validate() const;
};

/// Observation: realized weights, row-major side x side.
using MatchingObservation = std::vector<double>;

/// Assignment maximizing total weight, solved by the Hungarian method.
/// Among optimal assignments the lexicographically smallest permutation is
/// returned. `weights` is row-major side x side.
std::vector<std::size_t> max_weight_assignment(std::span<const double> weights,
                                               std::size_t side);

/// Sum of weights[i][perm[i]] in row order.
double assignment_weight(std::span<const double> weights,
                         std::span<const std::size_t> perm);

core::SampleBatch<MatchingObservation> gen_matching(std::size_t n, const MatchingParams& params,
                                                    Rng& rng);

/// SAA: assignment on the empirical mean weight matrix.
Model matching_saa(std::span<const MatchingObservation> batch, const MatchingParams& params);

double matching_loss(const Model& perm, const MatchingObservation& weights);

/// Expected cost -Σ E[w_{i, perm(i)}].
double matching_true_risk(const Model& perm, const MatchingParams& params);

StochasticProblem<MatchingObservation> make_matching(MatchingParams params);

}  // namespace vote_ensemble::problems

#pragma once

// Linear regression min_{θ ∈ [-1,1]} E[(xθ - y)^2] with x ∈ {-1, +1},
// y = xθ* + ε, θ* = 0 and symmetric heavy-tailed ε. The excess risk of any
// θ ∈ [-1, 1] is θ².

#include <cstddef>
#include <span>

#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

struct RegressionObservation {
  double x;
  double y;
};

/// Noise law ε = e1 - e2 with e1, e2 independent Pareto(α).
struct RegressionNoise {
  double alpha;

  /// σ² = E[ε²]; +inf for α <= 2.
  double variance() const;
  /// μ4 = E[ε⁴]; +inf for α <= 4.
  double fourth_moment() const;
};

core::SampleBatch<RegressionObservation> gen_regression(std::size_t n, double alpha,
                                                        Rng& rng);

/// Least squares projected onto [-1, 1]: clamp(mean(x y), -1, 1) since x² = 1.
Model regression_ls(std::span<const RegressionObservation> batch);

double regression_loss(const Model& theta, const RegressionObservation& obs);

/// θ²; the population risk minus σ².
double regression_excess_risk(const Model& theta);

StochasticProblem<RegressionObservation> make_regression(double alpha);

}  // namespace vote_ensemble::problems

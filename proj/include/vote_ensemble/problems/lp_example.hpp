#pragma once

// Stochastic LP min_{θ ∈ [0,1]} E[z θ] with E[z] = 1, so L(θ) = θ.
// The SAA solution is 1 when the sample mean is negative and 0 otherwise,
// and heavy-tailed symmetric noise makes the wrong answer polynomially likely.

#include <cstddef>
#include <span>

#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

/// z = 1 + (e1 - e2), e1 and e2 independent Pareto(α).
core::SampleBatch<double> gen_lp_example(std::size_t n, double alpha, Rng& rng);

/// 1 if the sample mean is negative, else 0 (a zero mean returns 0).
Model lp_example_saa(std::span<const double> batch);

/// L(θ) = θ.
double lp_example_true_risk(const Model& theta);

double lp_example_loss(const Model& theta, double z);

StochasticProblem<double> make_lp_example(double alpha);

}  // namespace vote_ensemble::problems

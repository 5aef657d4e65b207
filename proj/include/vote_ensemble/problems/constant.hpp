#pragma once

#include <cstdint>

#include "vote_ensemble/problems/stochastic_problem.hpp"

namespace vote_ensemble::problems {

/// Degenerate problem whose learner always returns the discrete model
/// {value}; every model has the configured excess risk. Data are uniform
/// draws that the learner ignores.
StochasticProblem<double> make_constant_problem(std::int64_t value, double excess);

}  // namespace vote_ensemble::problems

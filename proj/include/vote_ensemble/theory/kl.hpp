#pragma once

namespace vote_ensemble::theory {

/// Bernoulli KL divergence D(p || q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)),
/// with 0 ln 0 = 0.
///
/// For q ∈ {0, 1} the divergence is 0 when p == q and +infinity otherwise,
/// so exp(-c D) evaluates to 0 in bounds. Throws InvalidArgument when p or q
/// lies outside [0, 1].
double kl_bernoulli(double p, double q);

}  // namespace vote_ensemble::theory

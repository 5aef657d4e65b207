#pragma once

// Mean-variance portfolio: minimize E[((r - μ)·θ)²] over the probability
// simplex with known means μ. The return floor μ·θ >= b is required to be
// inactive (b <= min μ_i), which leaves a simplex-constrained QP.

#include <cstddef>
#include <span>
#include <vector>

#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

/// Asset returns r = M r̃ where r̃ holds independent Pareto(shape) returns of
/// the underlying assets and M is `mixing` (assets x underlying, row-major).
struct PortfolioParams {
  std::size_t assets = 10;
  std::size_t underlying = 100;
  std::vector<double> mixing;
  double shape = 2.1;
  double return_floor = 0.0;  // b

  /// Known means μ = M E[r̃].
  std::vector<double> means() const;
  /// Population covariance M M^T Var(r̃), row-major.
  std::vector<double> covariance() const;
  void validate() const;

  /// r_i = r̃_{s(i)} / 2 + Σ_j r̃_j / (2 U) with s(i) = i U / m (0-based);
  /// U = 100, m = 10 reproduces the ten-asset instance.
  static PortfolioParams standard(std::size_t assets, std::size_t underlying, double shape);
};

/// Observation: one realized return vector.
using PortfolioObservation = std::vector<double>;

/// Euclidean projection onto {θ >= 0, Σθ = 1} (sort-based).
std::vector<double> project_to_simplex(std::span<const double> point);

struct QpSolution {
  std::vector<double> theta;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct PgdOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-8;  // on the gradient-mapping norm
};

/// Minimizes θ^T Q θ over the simplex by projected gradient descent with
/// step 1/L̂, L̂ the largest absolute row sum of 2Q. Starts at the simplex
/// barycenter and returns the best iterate seen.
QpSolution minimize_quadratic_on_simplex(std::span<const double> q, std::size_t dim,
                                         const PgdOptions& options = {});

core::SampleBatch<PortfolioObservation> gen_portfolio(std::size_t n,
                                                      const PortfolioParams& params, Rng& rng);

/// SAA: minimizes (1/n) Σ ((r_i - μ)·θ)² over the simplex.
QpSolution portfolio_saa(std::span<const PortfolioObservation> batch,
                         std::span<const double> means);

double portfolio_loss(const Model& theta, const PortfolioObservation& r,
                      std::span<const double> means);

StochasticProblem<PortfolioObservation> make_portfolio(PortfolioParams params);

}  // namespace vote_ensemble::problems

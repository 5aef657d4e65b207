#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vote_ensemble/core/ensemble_config.hpp"
#include "vote_ensemble/harness/problem.hpp"
#include "vote_ensemble/harness/size_formula.hpp"

namespace vote_ensemble::harness {

/// Ensemble hyperparameters as formulas in n.
struct EnsembleFormulas {
  SizeFormula k = SizeFormula::parse("max(10, n/200)");
  SizeFormula k1 = SizeFormula::parse("max(10, n/200)");
  SizeFormula k2 = SizeFormula::parse("max(10, n/200)");
  SizeFormula B = SizeFormula::constant(200);
  SizeFormula B1 = SizeFormula::constant(20);
  SizeFormula B2 = SizeFormula::constant(200);
  core::EpsilonMode epsilon = core::EpsilonMode::adaptive();

  /// Recommended settings: discrete k = k1 = k2 = max(10, n/200), B = 200,
  /// B1 = 20, B2 = 200; continuous k1 = max(30, n/2), k2 = max(30, n/200),
  /// B1 = 50, B2 = 200. ε is adaptive in both.
  static EnsembleFormulas recommended(bool discrete_models);

  core::EnsembleConfig at(std::size_t n) const;
};

struct ExperimentPlan {
  std::shared_ptr<const Problem> problem;
  std::vector<Method> methods;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 500;
  double delta = 0.0;
  EnsembleFormulas ensemble;
  std::uint64_t master_seed = 0;

  /// Checks R >= 1, δ > 0, a strictly increasing grid, and every ensemble
  /// config the methods will use. Throws InvalidField naming the offending
  /// field ("ensemble.k", "n_grid", ...).
  void validate() const;
};

struct TailCell {
  Method method = Method::base;
  std::size_t n = 0;
  std::size_t replications = 0;  // completed, excluding failures
  std::size_t exceedances = 0;
  double tail = 0.0;
  double tail_se = 0.0;
  double mean_excess = 0.0;
  double mean_se = 0.0;
  std::size_t failures = 0;
  double mean_seconds = 0.0;
};

struct ReplicationFailure {
  Method method = Method::base;
  std::size_t n = 0;
  std::size_t replication = 0;
  std::uint64_t data_seed = 0;
  std::uint64_t method_seed = 0;
  std::string message;
};

struct TailCurve {
  std::vector<TailCell> cells;  // method-major, then n in grid order
  std::vector<ReplicationFailure> failures;

  /// Throws InvalidArgument when the cell is missing.
  const TailCell& at(Method method, std::size_t n) const;
};

/// Runs every (n, replication) cell on `workers` threads. Replication r at
/// size n draws its dataset from derive_seed(master, "data", n, r) and each
/// method's randomness from derive_seed(master, method, n, r), so all
/// methods see the same datasets and the result does not depend on the
/// worker count or scheduling.
TailCurve run_tail_experiment(const ExperimentPlan& plan, std::size_t workers = 1);

struct DominanceReport {
  double difference = 0.0;    // tail_a - tail_b
  double combined_se = 0.0;   // sqrt(se_a² + se_b²)
  bool a_dominates = false;   // difference < -3 combined_se
};

DominanceReport compare_methods(const TailCurve& curve, Method a, Method b, std::size_t n);

}  // namespace vote_ensemble::harness

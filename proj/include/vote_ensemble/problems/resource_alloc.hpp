#pragma once

// Resource allocation: choose a subset θ ∈ {0,1}^m of projects to maximize
// r·θ - c E[(W·θ - q)^+], with random requirements W_i ~ Pareto(α_i).
// Exposed as the cost -r·θ + c E[(W·θ - q)^+].

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "vote_ensemble/core/sample_batch.hpp"
#include "vote_ensemble/model.hpp"
#include "vote_ensemble/problems/pareto.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

inline constexpr std::size_t kMaxProjects = 20;

struct ResourceAllocParams {
  std::vector<double> rewards;        // r, one per project
  double unit_cost = 1.0;             // c
  double base_quantity = 0.0;         // q
  std::vector<double> shapes;         // Pareto shape of W_i
  std::uint64_t oracle_draws = 10'000'000;
  std::uint64_t oracle_seed = 20240917;

  std::size_t projects() const noexcept { return rewards.size(); }
  void validate() const;
};

/// Observation: realized requirements W (one per project).
using ResourceObservation = std::vector<double>;

core::SampleBatch<ResourceObservation> gen_resource_alloc(std::size_t n,
                                                          const ResourceAllocParams& params,
                                                          Rng& rng);

double resource_alloc_loss(const Model& theta, const ResourceObservation& w,
                           const ResourceAllocParams& params);

/// Exhaustive SAA over all 2^m selections; ties go to the smallest ModelKey.
Model resource_alloc_saa(std::span<const ResourceObservation> batch,
                         const ResourceAllocParams& params);

/// Frozen Monte-Carlo oracle for E[cost(θ)] over every selection.
///
/// One seeded pass draws `oracle_draws` requirement vectors and evaluates all
/// 2^m selections on the same draws.
class ResourceAllocOracle {
 public:
  explicit ResourceAllocOracle(ResourceAllocParams params);

  double expected_cost(const Model& theta) const;
  double standard_error(const Model& theta) const;
  double optimal_cost() const noexcept { return optimal_; }
  const ResourceAllocParams& params() const noexcept { return params_; }

 private:
  std::size_t mask_of(const Model& theta) const;

  ResourceAllocParams params_;
  std::vector<double> cost_;
  std::vector<double> se_;
  double optimal_ = 0.0;
};

/// Selection θ as a bitmask (bit i = project i).
Model resource_selection(std::size_t mask, std::size_t projects);

StochasticProblem<ResourceObservation> make_resource_alloc(ResourceAllocParams params);

}  // namespace vote_ensemble::problems

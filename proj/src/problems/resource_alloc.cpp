#include "vote_ensemble/problems/resource_alloc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <string>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::problems {

void ResourceAllocParams::validate() const {
  if (rewards.empty()) throw InvalidField("rewards", "need at least one project");
  if (rewards.size() > kMaxProjects) {
    throw InvalidField("rewards", "at most " + std::to_string(kMaxProjects) +
                                      " projects are supported");
  }
  if (shapes.size() != rewards.size()) {
    throw InvalidField("shapes", "need one Pareto shape per project");
  }
  for (double s : shapes) static_cast<void>(ParetoSpec(s));
  if (!(unit_cost >= 0.0)) throw InvalidField("unit_cost", "must be >= 0");
  if (!(base_quantity >= 0.0)) throw InvalidField("base_quantity", "must be >= 0");
  if (oracle_draws < 2) throw InvalidField("oracle_draws", "must be >= 2");
}

Model resource_selection(std::size_t mask, std::size_t projects) {
  std::vector<std::int64_t> bits(projects);
  for (std::size_t i = 0; i < projects; ++i) bits[i] = (mask >> i) & 1U;
  return Model::discrete(bits);
}

core::SampleBatch<ResourceObservation> gen_resource_alloc(std::size_t n,
                                                          const ResourceAllocParams& params,
                                                          Rng& rng) {
  params.validate();
  if (n == 0) throw InvalidArgument("sample size must be positive");
  std::vector<ParetoSpec> laws;
  for (double s : params.shapes) laws.emplace_back(s);
  std::vector<ResourceObservation> out(n, ResourceObservation(params.projects()));
  for (auto& w : out) {
    for (std::size_t i = 0; i < laws.size(); ++i) w[i] = laws[i].sample(rng);
  }
  return core::SampleBatch<ResourceObservation>(std::move(out));
}

double resource_alloc_loss(const Model& theta, const ResourceObservation& w,
                           const ResourceAllocParams& params) {
  double reward = 0.0;
  double need = 0.0;
  for (std::size_t i = 0; i < params.projects(); ++i) {
    if (theta.integer(i) != 0) {
      reward += params.rewards[i];
      need += w[i];
    }
  }
  return -reward + params.unit_cost * std::max(0.0, need - params.base_quantity);
}

Model resource_alloc_saa(std::span<const ResourceObservation> batch,
                         const ResourceAllocParams& params) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  const std::size_t m = params.projects();
  Model best;
  double best_cost = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    auto theta = resource_selection(mask, m);
    double total = 0.0;
    for (const auto& w : batch) total += resource_alloc_loss(theta, w, params);
    if (mask == 0 || total < best_cost ||
        (total == best_cost && theta.key() < best.key())) {
      best_cost = total;
      best = std::move(theta);
    }
  }
  return best;
}

ResourceAllocOracle::ResourceAllocOracle(ResourceAllocParams params)
    : params_(std::move(params)) {
  params_.validate();
  const std::size_t m = params_.projects();
  const std::size_t masks = std::size_t{1} << m;
  std::vector<ParetoSpec> laws;
  for (double s : params_.shapes) laws.emplace_back(s);

  std::vector<double> sum(masks, 0.0), sum_sq(masks, 0.0), need(masks);
  std::vector<double> w(m);
  Rng rng(params_.oracle_seed);
  for (std::uint64_t t = 0; t < params_.oracle_draws; ++t) {
    for (std::size_t i = 0; i < m; ++i) w[i] = laws[i].sample(rng);
    need[0] = 0.0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      need[mask] = need[mask & (mask - 1)] + w[low];
      const double penalty = std::max(0.0, need[mask] - params_.base_quantity);
      sum[mask] += penalty;
      sum_sq[mask] += penalty * penalty;
    }
  }
  const auto draws = static_cast<double>(params_.oracle_draws);
  cost_.resize(masks);
  se_.resize(masks);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    double reward = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) reward += params_.rewards[i];
    }
    const double mean = sum[mask] / draws;
    const double var = std::max(0.0, (sum_sq[mask] - draws * mean * mean) / (draws - 1.0));
    cost_[mask] = -reward + params_.unit_cost * mean;
    se_[mask] = params_.unit_cost * std::sqrt(var / draws);
  }
  optimal_ = *std::min_element(cost_.begin(), cost_.end());
}

std::size_t ResourceAllocOracle::mask_of(const Model& theta) const {
  if (theta.dimension() != params_.projects()) {
    throw InvalidArgument("selection has the wrong number of projects");
  }
  std::size_t mask = 0;
  for (std::size_t i = 0; i < theta.dimension(); ++i) {
    const auto v = theta.integer(i);
    if (v != 0 && v != 1) throw InvalidArgument("selection entries must be 0 or 1");
    mask |= static_cast<std::size_t>(v) << i;
  }
  return mask;
}

double ResourceAllocOracle::expected_cost(const Model& theta) const {
  return cost_[mask_of(theta)];
}

double ResourceAllocOracle::standard_error(const Model& theta) const {
  return se_[mask_of(theta)];
}

StochasticProblem<ResourceObservation> make_resource_alloc(ResourceAllocParams params) {
  params.validate();
  // The oracle is built on first use and shared by every copy of the problem.
  struct Lazy {
    ResourceAllocParams params;
    std::once_flag once;
    std::unique_ptr<ResourceAllocOracle> oracle;
    const ResourceAllocOracle& get() {
      std::call_once(once, [&] { oracle = std::make_unique<ResourceAllocOracle>(params); });
      return *oracle;
    }
  };
  auto lazy = std::make_shared<Lazy>();
  lazy->params = params;

  StochasticProblem<ResourceObservation> p;
  p.name = "resource_alloc";
  p.discrete_models = true;
  p.generate = [params](std::size_t n, Rng& rng) {
    return gen_resource_alloc(n, params, rng);
  };
  p.learner = [params](std::span<const ResourceObservation> batch, Rng&) {
    return resource_alloc_saa(batch, params);
  };
  p.loss = [params](const Model& theta, const ResourceObservation& w) {
    return resource_alloc_loss(theta, w, params);
  };
  p.true_risk = [lazy](const Model& theta) { return lazy->get().expected_cost(theta); };
  p.excess_risk = [lazy](const Model& theta) {
    const auto& oracle = lazy->get();
    return oracle.expected_cost(theta) - oracle.optimal_cost();
  };
  p.oracle_metadata = [lazy] {
    const auto& oracle = lazy->get();
    double max_se = 0.0;
    const std::size_t m = oracle.params().projects();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      max_se = std::max(max_se, oracle.standard_error(resource_selection(mask, m)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", oracle.optimal_cost());
    std::string optimal = buf;
    std::snprintf(buf, sizeof buf, "%.12g", max_se);
    return std::map<std::string, std::string>{
        {"true_risk", "seeded Monte-Carlo oracle"},
        {"oracle_seed", std::to_string(oracle.params().oracle_seed)},
        {"oracle_draws", std::to_string(oracle.params().oracle_draws)},
        {"optimal_cost", optimal},
        {"max_standard_error", buf}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

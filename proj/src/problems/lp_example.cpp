#include "vote_ensemble/problems/lp_example.hpp"

#include <vector>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/problems/pareto.hpp"

namespace vote_ensemble::problems {

core::SampleBatch<double> gen_lp_example(std::size_t n, double alpha, Rng& rng) {
  const ParetoSpec pareto(alpha);
  if (n == 0) throw InvalidArgument("sample size must be positive");
  std::vector<double> z(n);
  for (auto& v : z) {
    const double e1 = pareto.sample(rng);
    const double e2 = pareto.sample(rng);
    v = 1.0 + (e1 - e2);
  }
  return core::SampleBatch<double>(std::move(z));
}

Model lp_example_saa(std::span<const double> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  double sum = 0.0;
  for (auto z : batch) sum += z;
  return Model::discrete({sum < 0.0 ? 1 : 0});
}

double lp_example_true_risk(const Model& theta) {
  const auto v = theta.integer(0);
  if (theta.dimension() != 1 || (v != 0 && v != 1)) {
    throw InvalidArgument("LP example model must be 0 or 1");
  }
  return static_cast<double>(v);
}

double lp_example_loss(const Model& theta, double z) { return z * theta[0]; }

StochasticProblem<double> make_lp_example(double alpha) {
  const ParetoSpec spec(alpha);
  StochasticProblem<double> p;
  p.name = "lp_example";
  p.discrete_models = true;
  p.generate = [alpha](std::size_t n, Rng& rng) { return gen_lp_example(n, alpha, rng); };
  p.learner = [](std::span<const double> batch, Rng&) { return lp_example_saa(batch); };
  p.loss = lp_example_loss;
  p.true_risk = lp_example_true_risk;
  p.excess_risk = lp_example_true_risk;
  p.oracle_metadata = [] {
    return std::map<std::string, std::string>{{"true_risk", "closed form L(theta) = theta"}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

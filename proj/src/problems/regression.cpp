#include "vote_ensemble/problems/regression.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/problems/pareto.hpp"

namespace vote_ensemble::problems {

double RegressionNoise::variance() const { return 2.0 * ParetoSpec(alpha).variance(); }

double RegressionNoise::fourth_moment() const {
  const ParetoSpec p(alpha);
  if (alpha <= 4.0) return std::numeric_limits<double>::infinity();
  const double m1 = p.raw_moment(1), m2 = p.raw_moment(2), m3 = p.raw_moment(3),
               m4 = p.raw_moment(4);
  // E[(X1 - X2)^4] expanded with independent, identically distributed terms.
  return 2.0 * m4 - 8.0 * m3 * m1 + 6.0 * m2 * m2;
}

core::SampleBatch<RegressionObservation> gen_regression(std::size_t n, double alpha,
                                                        Rng& rng) {
  const ParetoSpec pareto(alpha);
  if (n == 0) throw InvalidArgument("sample size must be positive");
  std::vector<RegressionObservation> out(n);
  for (auto& obs : out) {
    obs.x = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const double e1 = pareto.sample(rng);
    const double e2 = pareto.sample(rng);
    obs.y = e1 - e2;  // θ* = 0
  }
  return core::SampleBatch<RegressionObservation>(std::move(out));
}

Model regression_ls(std::span<const RegressionObservation> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  double sum = 0.0;
  for (const auto& obs : batch) sum += obs.x * obs.y;
  return Model::continuous({std::clamp(sum / static_cast<double>(batch.size()), -1.0, 1.0)});
}

double regression_loss(const Model& theta, const RegressionObservation& obs) {
  const double r = obs.x * theta[0] - obs.y;
  return r * r;
}

double regression_excess_risk(const Model& theta) { return theta[0] * theta[0]; }

StochasticProblem<RegressionObservation> make_regression(double alpha) {
  const RegressionNoise noise{alpha};
  static_cast<void>(ParetoSpec(alpha));
  StochasticProblem<RegressionObservation> p;
  p.name = "regression";
  p.discrete_models = false;
  p.generate = [alpha](std::size_t n, Rng& rng) { return gen_regression(n, alpha, rng); };
  p.learner = [](std::span<const RegressionObservation> batch, Rng&) {
    return regression_ls(batch);
  };
  p.loss = regression_loss;
  p.true_risk = [noise](const Model& theta) {
    return theta[0] * theta[0] + noise.variance();
  };
  p.excess_risk = regression_excess_risk;
  p.oracle_metadata = [] {
    return std::map<std::string, std::string>{{"true_risk", "closed form theta^2 + sigma^2"}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

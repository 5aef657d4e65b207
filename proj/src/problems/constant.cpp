#include "vote_ensemble/problems/constant.hpp"

#include <vector>

namespace vote_ensemble::problems {

StochasticProblem<double> make_constant_problem(std::int64_t value, double excess) {
  StochasticProblem<double> p;
  p.name = "constant";
  p.discrete_models = true;
  p.generate = [](std::size_t n, Rng& rng) {
    std::vector<double> z(n);
    for (auto& v : z) v = rng.uniform01();
    return core::SampleBatch<double>(std::move(z));
  };
  p.learner = [value](std::span<const double>, Rng&) { return Model::discrete({value}); };
  p.loss = [](const Model&, double) { return 0.0; };
  p.true_risk = [excess](const Model&) { return excess; };
  p.excess_risk = [excess](const Model&) { return excess; };
  p.oracle_metadata = [] {
    return std::map<std::string, std::string>{{"true_risk", "configured constant"}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vote_ensemble/core/ensemble.hpp"
#include "vote_ensemble/problems/stochastic_problem.hpp"
#include "vote_ensemble/theory/selection_probability.hpp"

namespace vote_ensemble::harness {

enum class Method { base, move, rove, roves };

std::string_view method_name(Method m);
/// Throws InvalidArgument for unknown names.
Method parse_method(std::string_view name);

struct MethodRun {
  Method method;
  core::EnsembleConfig config;  // `split` is overridden by the method
  std::uint64_t seed;
};

struct MethodOutcome {
  bool ok = false;
  double excess_risk = 0.0;
  double seconds = 0.0;
  std::string error;
};

/// Type-erased problem family as seen by the experiment engine.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual const std::string& name() const = 0;
  virtual bool discrete_models() const = 0;

  /// Generates one dataset of size n from `data_seed` and runs every method
  /// on it, each with its own stream. Failures are reported per method.
  virtual std::vector<MethodOutcome> run_replication(std::size_t n, std::uint64_t data_seed,
                                                     std::span<const MethodRun> runs) const = 0;

  /// p_k table of the base learner on fresh data.
  virtual theory::PkTable estimate_pk(std::size_t k, std::uint64_t trials,
                                      std::uint64_t seed) const = 0;

  virtual std::map<std::string, std::string> oracle_metadata() const = 0;
};

template <class Obs>
class ProblemAdapter final : public Problem {
 public:
  explicit ProblemAdapter(problems::StochasticProblem<Obs> problem)
      : problem_(std::move(problem)) {}

  const std::string& name() const override { return problem_.name; }
  bool discrete_models() const override { return problem_.discrete_models; }

  std::vector<MethodOutcome> run_replication(std::size_t n, std::uint64_t data_seed,
                                             std::span<const MethodRun> runs) const override {
    std::vector<MethodOutcome> out(runs.size());
    std::optional<core::SampleBatch<Obs>> data;
    try {
      Rng data_rng(data_seed);
      data.emplace(problem_.generate(n, data_rng));
    } catch (const std::exception& e) {
      for (auto& o : out) o.error = std::string("data generation: ") + e.what();
      return out;
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto start = std::chrono::steady_clock::now();
      try {
        out[i].excess_risk = problem_.excess_risk(train(runs[i], *data));
        out[i].ok = true;
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
      out[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
  }

  theory::PkTable estimate_pk(std::size_t k, std::uint64_t trials,
                              std::uint64_t seed) const override {
    Rng rng(seed);
    theory::BatchSampler<Obs> sampler = problem_.generate;
    return theory::estimate_pk<Obs>(problem_.learner, sampler, k, trials, rng);
  }

  std::map<std::string, std::string> oracle_metadata() const override {
    return problem_.oracle_metadata ? problem_.oracle_metadata()
                                    : std::map<std::string, std::string>{};
  }

  const problems::StochasticProblem<Obs>& problem() const noexcept { return problem_; }

 private:
  Model train(const MethodRun& run, const core::SampleBatch<Obs>& data) const {
    Rng rng(run.seed);
    auto cfg = run.config;
    switch (run.method) {
      case Method::base:
        return problem_.learner(data.items(), rng);
      case Method::move:
        return core::run_move(problem_.learner, data, cfg, rng).model;
      case Method::rove:
        cfg.split = false;
        return core::run_rove(problem_.learner, problem_.loss, data, cfg, rng).model;
      case Method::roves:
        cfg.split = true;
        return core::run_rove(problem_.learner, problem_.loss, data, cfg, rng).model;
    }
    throw InvalidArgument("unknown method");
  }

  problems::StochasticProblem<Obs> problem_;
};

template <class Obs>
std::shared_ptr<const Problem> make_problem(problems::StochasticProblem<Obs> problem) {
  return std::make_shared<ProblemAdapter<Obs>>(std::move(problem));
}

}  // namespace vote_ensemble::harness

#include "vote_ensemble/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/harness/seed.hpp"

namespace vote_ensemble::harness {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::base: return "base";
    case Method::move: return "move";
    case Method::rove: return "rove";
    case Method::roves: return "roves";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::base, Method::move, Method::rove, Method::roves}) {
    if (method_name(m) == name) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected base, move, rove or roves)");
}

EnsembleFormulas EnsembleFormulas::recommended(bool discrete_models) {
  EnsembleFormulas f;
  if (!discrete_models) {
    f.k1 = SizeFormula::parse("max(30, n/2)");
    f.k2 = SizeFormula::parse("max(30, n/200)");
    f.B1 = SizeFormula::constant(50);
  }
  return f;
}

core::EnsembleConfig EnsembleFormulas::at(std::size_t n) const {
  core::EnsembleConfig cfg;
  const auto eval = [n](const char* field, const SizeFormula& f) {
    try {
      return f.evaluate(n);
    } catch (const InvalidArgument& e) {
      throw InvalidField(std::string("ensemble.") + field, e.what());
    }
  };
  cfg.k = eval("k", k);
  cfg.k1 = eval("k1", k1);
  cfg.k2 = eval("k2", k2);
  cfg.B = eval("B", B);
  cfg.B1 = eval("B1", B1);
  cfg.B2 = eval("B2", B2);
  cfg.epsilon = epsilon;
  return cfg;
}

void ExperimentPlan::validate() const {
  if (!problem) throw InvalidField("problem", "missing");
  if (methods.empty()) throw InvalidField("methods", "need at least one method");
  if (replications == 0) throw InvalidField("replications", "must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidField("delta", "must be > 0");
  if (n_grid.empty()) throw InvalidField("n_grid", "must be non-empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] == 0) throw InvalidField("n_grid", "sample sizes must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw InvalidField("n_grid", "must be strictly increasing");
    }
  }
  for (auto n : n_grid) {
    auto cfg = ensemble.at(n);
    for (auto m : methods) {
      try {
        if (m == Method::move) cfg.validate_move(n);
        if (m == Method::rove || m == Method::roves) {
          cfg.split = (m == Method::roves);
          cfg.validate_rove(n);
        }
      } catch (const InvalidField& e) {
        throw InvalidField("ensemble." + e.field(),
                           e.message() + " (method " +
                               std::string(method_name(m)) + ", n = " + std::to_string(n) + ")");
      }
    }
  }
}

const TailCell& TailCurve::at(Method method, std::size_t n) const {
  for (const auto& c : cells) {
    if (c.method == method && c.n == n) return c;
  }
  throw InvalidArgument("no tail estimate for method " + std::string(method_name(method)) +
                        " at n = " + std::to_string(n));
}

TailCurve run_tail_experiment(const ExperimentPlan& plan, std::size_t workers) {
  plan.validate();
  const std::size_t R = plan.replications;
  const std::size_t tasks = plan.n_grid.size() * R;
  std::vector<core::EnsembleConfig> configs;
  for (auto n : plan.n_grid) configs.push_back(plan.ensemble.at(n));

  std::vector<std::vector<MethodOutcome>> outcomes(tasks);
  std::vector<std::uint64_t> data_seeds(tasks);
  std::vector<std::vector<MethodRun>> runs(tasks);
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t n = plan.n_grid[t / R];
    const std::size_t r = t % R;
    data_seeds[t] = derive_seed(plan.master_seed, "data", n, r);
    for (auto m : plan.methods) {
      runs[t].push_back({m, configs[t / R], derive_seed(plan.master_seed, method_name(m), n, r)});
    }
  }

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      outcomes[t] = plan.problem->run_replication(plan.n_grid[t / R], data_seeds[t], runs[t]);
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, tasks));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  TailCurve curve;
  for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
    for (std::size_t ni = 0; ni < plan.n_grid.size(); ++ni) {
      TailCell cell;
      cell.method = plan.methods[mi];
      cell.n = plan.n_grid[ni];
      double sum = 0.0, sum_sq = 0.0, seconds = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const std::size_t t = ni * R + r;
        const auto& o = outcomes[t][mi];
        seconds += o.seconds;
        if (!o.ok) {
          ++cell.failures;
          curve.failures.push_back(
              {cell.method, cell.n, r, data_seeds[t], runs[t][mi].seed, o.error});
          continue;
        }
        ++cell.replications;
        if (o.excess_risk > plan.delta) ++cell.exceedances;
        sum += o.excess_risk;
        sum_sq += o.excess_risk * o.excess_risk;
      }
      cell.mean_seconds = seconds / static_cast<double>(R);
      if (cell.replications > 0) {
        const auto count = static_cast<double>(cell.replications);
        cell.tail = static_cast<double>(cell.exceedances) / count;
        cell.tail_se = std::sqrt(cell.tail * (1.0 - cell.tail) / count);
        cell.mean_excess = sum / count;
        if (cell.replications > 1) {
          const double var =
              std::max(0.0, (sum_sq - count * cell.mean_excess * cell.mean_excess) / (count - 1.0));
          cell.mean_se = std::sqrt(var / count);
        }
      }
      curve.cells.push_back(cell);
    }
  }
  return curve;
}

DominanceReport compare_methods(const TailCurve& curve, Method a, Method b, std::size_t n) {
  const auto& ca = curve.at(a, n);
  const auto& cb = curve.at(b, n);
  DominanceReport report;
  report.difference = ca.tail - cb.tail;
  report.combined_se = std::sqrt(ca.tail_se * ca.tail_se + cb.tail_se * cb.tail_se);
  report.a_dominates = report.difference < -3.0 * report.combined_se;
  return report;
}

}  // namespace vote_ensemble::harness

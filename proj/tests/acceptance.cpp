// Acceptance report. Prints one PASS/FAIL line per criterion; with criterion
// numbers as arguments only those run. Exit status is the number of failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "vote_ensemble/core/ensemble.hpp"
#include "vote_ensemble/harness/experiment.hpp"
#include "vote_ensemble/problems/lp_example.hpp"
#include "vote_ensemble/problems/matching.hpp"
#include "vote_ensemble/problems/portfolio.hpp"
#include "vote_ensemble/problems/regression.hpp"
#include "vote_ensemble/theory/bounds.hpp"
#include "vote_ensemble/theory/kl.hpp"
#include "vote_ensemble/theory/selection_probability.hpp"

using namespace vote_ensemble;

namespace {

constexpr double kAlpha = 2.1;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

harness::ExperimentPlan lp_plan(std::vector<harness::Method> methods,
                                std::vector<std::size_t> grid, std::size_t replications) {
  harness::ExperimentPlan plan;
  plan.problem = harness::make_problem(problems::make_lp_example(kAlpha));
  plan.methods = std::move(methods);
  plan.n_grid = std::move(grid);
  plan.replications = replications;
  plan.delta = 0.5;
  plan.master_seed = 20240601;
  plan.ensemble = harness::EnsembleFormulas::recommended(true);
  plan.ensemble.k = harness::SizeFormula::constant(10);
  plan.ensemble.B = harness::SizeFormula::constant(200);
  return plan;
}

// P(sum of k LP draws > 0), estimated on a stream unrelated to estimate_pk.
std::pair<double, double> direct_q(std::size_t k, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t positive = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    double s = 0.0;
    for (double z : problems::gen_lp_example(k, kAlpha, rng)) s += z;
    positive += s > 0.0;
  }
  const double q = positive / static_cast<double>(trials);
  return {q, std::sqrt(q * (1 - q) / trials)};
}

Verdict oracle_equivalence() {
  Rng data_rng(8);
  const auto data = problems::gen_lp_example(8, kAlpha, data_rng);
  const core::BaseLearner<double> base = [](std::span<const double> z, Rng&) {
    return problems::lp_example_saa(z);
  };
  const auto exact = theory::exact_phat_enumeration<double>(base, data, 3);
  core::EnsembleConfig cfg;
  cfg.k = 3;
  cfg.B = 100000;
  Rng rng(9);
  const auto out = core::run_move(base, data, cfg, rng);

  double worst = 0.0;
  std::set<ModelKey> keys;
  for (const auto& e : exact.entries) keys.insert(e.model.key());
  for (const auto& e : out.tally.entries) keys.insert(e.model.key());
  for (const auto& key : keys) {
    double freq = 0.0;
    for (const auto& e : out.tally.entries) {
      if (e.model.key() == key) freq = e.count / static_cast<double>(cfg.B);
    }
    worst = std::max(worst, std::abs(freq - exact.probability(key)));
  }
  const auto argmax = std::max_element(
      exact.entries.begin(), exact.entries.end(),
      [](const auto& a, const auto& b) { return a.p_hat < b.p_hat; });
  const bool agree = argmax->model.key() == out.model.key();
  return {worst <= 0.01 && agree,
          fmt("max |freq - p| = %.4f, argmax %s vs %s", worst, argmax->model.to_string().c_str(),
              out.model.to_string().c_str())};
}

Verdict corollary_consistency() {
  const std::size_t k = 10, trials = 100000;
  const auto problem = harness::make_problem(problems::make_lp_example(kAlpha));
  const auto table = problem->estimate_pk(k, trials, 77);
  const auto [q, q_se] = direct_q(k, trials, 78);
  const double p_max = table.max_probability();
  const double p_se = std::sqrt(p_max * (1 - p_max) / trials);
  // δ = 0.5 < 1: only θ = 0 is δ-optimal.
  const double eta = theory::eta_from_pk(table, {Model::discrete({0}).key()});
  const double eta_se = 2.0 * std::sqrt(table.probability(Model::discrete({0}).key()) *
                                        (1 - table.probability(Model::discrete({0}).key())) /
                                        trials);
  const double eta_gap = std::abs(eta - (2 * q - 1));
  const double eta_tol = 3.0 * std::sqrt(eta_se * eta_se + 4 * q_se * q_se);
  const double p_gap = std::abs(p_max - q);
  const double p_tol = 3.0 * std::sqrt(p_se * p_se + q_se * q_se);
  return {eta_gap <= eta_tol && p_gap <= p_tol && eta > 0.0,
          fmt("q = %.5f, eta = %.5f (|diff| %.5f <= %.5f), p_max = %.5f (|diff| %.5f <= %.5f)",
              q, eta, eta_gap, eta_tol, p_max, p_gap, p_tol)};
}

Verdict bound_dominance() {
  using harness::Method;
  const auto curve = harness::run_tail_experiment(lp_plan({Method::move}, {200, 400, 800}, 2000));
  const auto problem = harness::make_problem(problems::make_lp_example(kAlpha));
  const auto table = problem->estimate_pk(10, 100000, 91);
  const double p_max = table.max_probability();
  const double eta = theory::eta_from_pk(table, {Model::discrete({0}).key()});
  bool pass = true;
  std::string detail = fmt("p_max %.4f eta %.4f;", p_max, eta);
  for (std::size_t n : {200, 400, 800}) {
    const auto& c = curve.at(Method::move, n);
    const double bound = theory::move_bound({p_max, eta, n, 10, 200, 2});
    pass = pass && c.tail <= bound + 3.0 * c.tail_se;
    detail += fmt(" n=%zu tail %.4f bound %.4g;", n, c.tail, bound);
  }
  return {pass, detail};
}

Verdict tail_improvement() {
  using harness::Method;
  const auto curve = harness::run_tail_experiment(
      lp_plan({Method::base, Method::move, Method::rove}, {200, 400, 800}, 2000));
  bool pass = true;
  std::string detail;
  for (std::size_t n : {200, 400, 800}) {
    const double base = curve.at(Method::base, n).tail;
    for (Method m : {Method::move, Method::rove}) {
      const double t = curve.at(m, n).tail;
      pass = pass && t <= base;
      if (n == 800) pass = pass && (t <= 0.5 * base || (t < 0.005 && base < 0.005));
    }
    detail += fmt(" n=%zu base %.4f move %.4f rove %.4f;", n, base,
                  curve.at(Method::move, n).tail, curve.at(Method::rove, n).tail);
  }
  return {pass, detail};
}

Verdict regression_tail() {
  using harness::Method;
  harness::ExperimentPlan plan;
  plan.problem = harness::make_problem(problems::make_regression(kAlpha));
  plan.methods = {Method::base, Method::rove};
  for (std::size_t e = 8; e <= 13; ++e) plan.n_grid.push_back(std::size_t{1} << e);
  plan.replications = 2000;
  plan.delta = 0.05;
  plan.master_seed = 20240602;
  plan.ensemble = harness::EnsembleFormulas::recommended(false);
  const auto curve = harness::run_tail_experiment(plan);

  // Least-squares slope of log tail against log n over cells with a positive tail.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  bool pass = true;
  std::string detail;
  for (std::size_t n : plan.n_grid) {
    const double base = curve.at(Method::base, n).tail;
    const double rove = curve.at(Method::rove, n).tail;
    if (base > 0.0) {
      const double x = std::log(static_cast<double>(n)), y = std::log(base);
      sx += x, sy += y, sxx += x * x, sxy += x * y, m += 1;
    }
    pass = pass && rove <= base;
    if (n == plan.n_grid.back()) {
      pass = pass && (rove <= 0.2 * base || (rove < 0.005 && base < 0.005));
    }
    detail += fmt(" n=%zu base %.4f rove %.4f;", n, base, rove);
  }
  const double slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : NAN;
  const bool slope_ok = slope >= -2.8 && slope <= -1.4;
  return {pass && slope_ok, fmt("slope %.3f (want [-2.8, -1.4]);", slope) + detail};
}

template <class Obs>
bool check_selection(const core::BaseLearner<Obs>& base, const core::LossOracle<Obs>& loss,
                     const core::SampleBatch<Obs>& data, const core::EnsembleConfig& cfg,
                     std::uint64_t seed, std::size_t& singletons, std::string& why) {
  Rng rng(seed);
  const auto candidates = core::retrieve_phase1(base, data, cfg, rng);
  Rng selection_rng(rng.spawn_base());
  const auto ballots = core::epsilon_selection_ballots(candidates, loss, data, cfg, selection_rng);
  const double eps = core::select_epsilon(ballots);

  Rng replay(seed);
  const auto rove = core::run_rove(base, loss, data, cfg, replay);
  if (rove.epsilon != eps) return why = "run_rove used a different epsilon", false;

  if (candidates.size() == 1) {
    ++singletons;
    if (eps != 0.0) return why = "|S| = 1 but epsilon > 0", false;
  }
  if (ballots.max_vote_fraction(eps) < 0.5) return why = "g(eps*) < 1/2", false;

  std::vector<double> grid{0.0, eps, ballots.spread()};
  for (std::size_t b = 0; b < ballots.ballots(); ++b) {
    for (std::size_t s = 0; s < ballots.models(); ++s) grid.push_back(ballots.gap(b, s));
  }
  for (int i = 0; i <= 200; ++i) grid.push_back(ballots.spread() * i / 200.0);
  std::sort(grid.begin(), grid.end());
  double prev = -1.0;
  for (double e : grid) {
    const double g = ballots.max_vote_fraction(e);
    if (g < prev) return why = "g decreases", false;
    prev = g;
  }
  if (ballots.max_vote_fraction(ballots.spread()) != 1.0) return why = "g(spread) != 1", false;
  return true;
}

Verdict epsilon_contract() {
  ve_test::Gen gen(606);
  std::size_t singletons = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.size(40, 400);
    core::EnsembleConfig cfg;
    cfg.split = gen.coin();
    const std::size_t cap = cfg.split ? n / 2 : n - 1;
    cfg.k1 = gen.size(1, cap);
    cfg.k2 = gen.size(1, cap);
    cfg.B1 = t % 10 == 0 ? 1 : gen.size(1, 30);
    cfg.B2 = gen.size(1, 200);
    const auto seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 30));
    std::string why;
    bool ok;
    Rng data_rng(seed ^ 0x5eed);
    if (t % 2 == 0) {
      const core::BaseLearner<double> base = [](std::span<const double> z, Rng&) {
        return problems::lp_example_saa(z);
      };
      const core::LossOracle<double> loss = problems::lp_example_loss;
      ok = check_selection(base, loss, problems::gen_lp_example(n, kAlpha, data_rng), cfg, seed,
                           singletons, why);
    } else {
      using Obs = problems::RegressionObservation;
      const core::BaseLearner<Obs> base = [](std::span<const Obs> b, Rng&) {
        return problems::regression_ls(b);
      };
      const core::LossOracle<Obs> loss = problems::regression_loss;
      ok = check_selection(base, loss, problems::gen_regression(n, kAlpha, data_rng), cfg, seed,
                           singletons, why);
    }
    if (!ok) return {false, fmt("instance %d: %s", t, why.c_str())};
  }
  return {true, fmt("100 instances, %zu with |S| = 1", singletons)};
}

Verdict matching_exactness() {
  ve_test::Gen gen(707);
  constexpr std::size_t side = 5;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> w(side * side);
    for (auto& v : w) v = gen.coin() ? gen.real(-10.0, 10.0) : static_cast<double>(gen.integer(0, 3));
    const auto hungarian = problems::max_weight_assignment(w, side);
    std::array<std::size_t, side> perm{0, 1, 2, 3, 4};
    double best = -INFINITY;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < side; ++i) total += w[i * side + perm[i]];
      best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    double got = 0.0;
    for (std::size_t i = 0; i < side; ++i) got += w[i * side + hungarian[i]];
    if (got != best) return {false, fmt("instance %d: %.17g vs %.17g", t, got, best)};
  }
  return {true, "200 instances equal to brute force"};
}

Verdict portfolio_solver() {
  ve_test::Gen gen(808);
  double worst = -INFINITY;
  for (int t = 0; t < 50; ++t) {
    auto params = problems::PortfolioParams::standard(3, gen.size(3, 30), gen.real(2.1, 4.0));
    Rng rng(static_cast<std::uint64_t>(t) + 1);
    const auto batch = problems::gen_portfolio(gen.size(10, 200), params, rng);
    const auto mu = params.means();
    const auto sol = problems::portfolio_saa(batch.items(), mu);

    double q[3][3] = {};
    for (const auto& r : batch) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) q[i][j] += (r[i] - mu[i]) * (r[j] - mu[j]);
      }
    }
    const auto objective = [&](const double* x) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) v += x[i] * q[i][j] * x[j];
      }
      return v / static_cast<double>(batch.size());
    };
    double grid_best = INFINITY;
    for (int i = 0; i <= 200; ++i) {
      for (int j = 0; i + j <= 200; ++j) {
        const double x[3] = {i / 200.0, j / 200.0, (200 - i - j) / 200.0};
        grid_best = std::min(grid_best, objective(x));
      }
    }
    const double pgd = objective(sol.theta.data());
    const double excess = (pgd - grid_best) / std::max(1.0, std::abs(grid_best));
    worst = std::max(worst, excess);
  }
  return {worst <= 1e-6, fmt("max relative (pgd - grid) = %.3g", worst)};
}

Verdict kl_suite() {
  ve_test::Gen gen(909);
  for (int t = 0; t < 200; ++t) {
    const double p = gen.real(0.0, 1.0);
    const double q = gen.real(1e-9, 1.0 - 1e-9);
    const double d = theory::kl_bernoulli(p, q);
    if (!(d >= 0.0)) return {false, fmt("negative at %g, %g", p, q)};
    if (theory::kl_bernoulli(p, p) != 0.0) return {false, fmt("nonzero at equality %g", p)};
    const double first = (p > 0.0 ? p * std::log(p / q) : 0.0) + q - p;
    const double gamma = std::min(p, 1.0 - p);
    const double second = -std::log(2.0 * std::pow(q * (1.0 - q), gamma));
    if (d < first - 1e-12 || d < second - 1e-12) {
      return {false, fmt("lower bound violated at %g, %g", p, q)};
    }
  }
  const double hand = theory::kl_bernoulli(0.5, 0.25);
  return {std::abs(hand - 0.14384) <= 1e-5, fmt("D(0.5||0.25) = %.6f", hand)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "vote_ensemble_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "run.yaml") << "problem:\n  id: lp_example\n  alpha: 2.1\n"
                                     "methods: [base, move, rove, roves]\n"
                                     "n_grid: [100, 200]\nreplications: 200\n"
                                     "delta: 0.5\nseed: 99\n";
  const auto run = [&](const std::string& tag, int workers) {
    const std::string cmd = std::string(VE_CLI_PATH) + " experiment --config " +
                            (dir / "run.yaml").string() + " --out " + (dir / tag).string() +
                            " --workers " + std::to_string(workers) + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) return std::string("<exit>");
    return slurp(dir / tag / "results.csv");
  };
  const auto a = run("a", 1), b = run("b", 1), c = run("c", 4);
  const bool ok = a != "<exit>" && !a.empty() && a == b && a == c;
  return {ok, fmt("%zu bytes; repeat %s, 4 workers %s", a.size(), a == b ? "identical" : "differs",
                  a == c ? "identical" : "differs")};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"oracle equivalence", 60, oracle_equivalence},
      {"eta = 2q - 1 consistency", 120, corollary_consistency},
      {"bound dominance", 300, bound_dominance},
      {"tail improvement", 300, tail_improvement},
      {"regression polynomial tail", 600, regression_tail},
      {"epsilon selection contract", 120, epsilon_contract},
      {"matching exactness", 30, matching_exactness},
      {"portfolio solver", 120, portfolio_solver},
      {"kl suite", 1, kl_suite},
      {"determinism", 120, determinism},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::strtoul(argv[i], nullptr, 10));
  if (selected.empty()) {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(i);
  }
  int failures = 0;
  for (std::size_t id : selected) {
    if (id < 1 || id > criteria.size()) {
      std::printf("FAIL %zu: no such criterion\n", id);
      ++failures;
      continue;
    }
    const auto& c = criteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = v.pass && in_budget;
    failures += !pass;
    std::printf("%s %zu %s: %s [%.2f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", id, c.name,
                v.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failures;
}

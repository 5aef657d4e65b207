#include "vote_ensemble/problems/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/problems/pareto.hpp"

namespace vote_ensemble::problems {

std::vector<double> PortfolioParams::means() const {
  const double m = ParetoSpec(shape).mean();
  std::vector<double> mu(assets, 0.0);
  for (std::size_t i = 0; i < assets; ++i) {
    for (std::size_t j = 0; j < underlying; ++j) mu[i] += mixing[i * underlying + j] * m;
  }
  return mu;
}

std::vector<double> PortfolioParams::covariance() const {
  const double var = ParetoSpec(shape).variance();
  std::vector<double> cov(assets * assets, 0.0);
  for (std::size_t a = 0; a < assets; ++a) {
    for (std::size_t b = 0; b < assets; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < underlying; ++j) {
        dot += mixing[a * underlying + j] * mixing[b * underlying + j];
      }
      cov[a * assets + b] = dot * var;
    }
  }
  return cov;
}

void PortfolioParams::validate() const {
  if (assets == 0) throw InvalidField("assets", "must be >= 1");
  if (underlying == 0) throw InvalidField("underlying", "must be >= 1");
  if (mixing.size() != assets * underlying) {
    throw InvalidField("mixing", "need assets * underlying coefficients");
  }
  if (!(shape > 2.0)) throw InvalidField("shape", "must be > 2 for a finite variance");
  const auto mu = means();
  if (return_floor > *std::min_element(mu.begin(), mu.end())) {
    throw InvalidField("return_floor", "must not exceed the smallest mean return");
  }
}

PortfolioParams PortfolioParams::standard(std::size_t assets, std::size_t underlying,
                                          double shape) {
  if (assets == 0 || underlying < assets) {
    throw InvalidField("underlying", "need at least as many underlying assets as assets");
  }
  PortfolioParams p;
  p.assets = assets;
  p.underlying = underlying;
  p.shape = shape;
  p.mixing.assign(assets * underlying, 0.5 / static_cast<double>(underlying));
  for (std::size_t i = 0; i < assets; ++i) {
    p.mixing[i * underlying + i * underlying / assets] += 0.5;
  }
  p.return_floor = 0.0;
  return p;
}

std::vector<double> project_to_simplex(std::span<const double> point) {
  if (point.empty()) throw InvalidArgument("cannot project an empty vector");
  std::vector<double> sorted(point.begin(), point.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) shift = candidate;
  }
  std::vector<double> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out[i] = std::max(point[i] - shift, 0.0);
  return out;
}

namespace {

double quadratic_form(std::span<const double> q, std::size_t dim, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim; ++j) row += q[i * dim + j] * x[j];
    total += x[i] * row;
  }
  return total;
}

}  // namespace

QpSolution minimize_quadratic_on_simplex(std::span<const double> q, std::size_t dim,
                                         const PgdOptions& options) {
  if (dim == 0 || q.size() != dim * dim) throw InvalidArgument("Q must be dim x dim");
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim; ++j) row += std::abs(2.0 * q[i * dim + j]);
    lipschitz = std::max(lipschitz, row);
  }

  QpSolution best;
  std::vector<double> theta(dim, 1.0 / static_cast<double>(dim));
  best.theta = theta;
  best.objective = quadratic_form(q, dim, theta);
  if (lipschitz == 0.0) {
    best.converged = true;
    return best;
  }

  std::vector<double> step(dim);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    for (std::size_t i = 0; i < dim; ++i) {
      double grad = 0.0;
      for (std::size_t j = 0; j < dim; ++j) grad += 2.0 * q[i * dim + j] * theta[j];
      step[i] = theta[i] - grad / lipschitz;
    }
    auto next = project_to_simplex(step);
    double mapping_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double g = lipschitz * (theta[i] - next[i]);
      mapping_sq += g * g;
    }
    theta = std::move(next);
    const double value = quadratic_form(q, dim, theta);
    best.iterations = it;
    if (value < best.objective) {
      best.objective = value;
      best.theta = theta;
    }
    if (std::sqrt(mapping_sq) <= options.tolerance) {
      best.converged = true;
      break;
    }
  }
  return best;
}

core::SampleBatch<PortfolioObservation> gen_portfolio(std::size_t n,
                                                      const PortfolioParams& params, Rng& rng) {
  const ParetoSpec pareto(params.shape);
  if (n == 0) throw InvalidArgument("sample size must be positive");
  std::vector<double> base(params.underlying);
  std::vector<PortfolioObservation> out(n, PortfolioObservation(params.assets));
  for (auto& r : out) {
    for (auto& v : base) v = pareto.sample(rng);
    for (std::size_t i = 0; i < params.assets; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < params.underlying; ++j) {
        total += params.mixing[i * params.underlying + j] * base[j];
      }
      r[i] = total;
    }
  }
  return core::SampleBatch<PortfolioObservation>(std::move(out));
}

QpSolution portfolio_saa(std::span<const PortfolioObservation> batch,
                         std::span<const double> means) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  const std::size_t m = means.size();
  std::vector<double> q(m * m, 0.0);
  std::vector<double> d(m);
  for (const auto& r : batch) {
    for (std::size_t i = 0; i < m; ++i) d[i] = r[i] - means[i];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) q[i * m + j] += d[i] * d[j];
    }
  }
  for (auto& v : q) v /= static_cast<double>(batch.size());
  return minimize_quadratic_on_simplex(q, m);
}

double portfolio_loss(const Model& theta, const PortfolioObservation& r,
                      std::span<const double> means) {
  double dot = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) dot += (r[i] - means[i]) * theta[i];
  return dot * dot;
}

StochasticProblem<PortfolioObservation> make_portfolio(PortfolioParams params) {
  params.validate();
  const auto mu = params.means();
  const auto cov = params.covariance();
  const auto optimum = minimize_quadratic_on_simplex(
      cov, params.assets, PgdOptions{.max_iterations = 200'000, .tolerance = 1e-14});
  const double optimal = optimum.objective;

  StochasticProblem<PortfolioObservation> p;
  p.name = "portfolio";
  p.discrete_models = false;
  p.generate = [params](std::size_t n, Rng& rng) { return gen_portfolio(n, params, rng); };
  p.learner = [mu](std::span<const PortfolioObservation> batch, Rng&) {
    return Model::continuous(portfolio_saa(batch, mu).theta);
  };
  p.loss = [mu](const Model& theta, const PortfolioObservation& r) {
    return portfolio_loss(theta, r, mu);
  };
  p.true_risk = [cov, dim = params.assets](const Model& theta) {
    return quadratic_form(cov, dim, theta.coords());
  };
  p.excess_risk = [cov, dim = params.assets, optimal](const Model& theta) {
    return std::max(0.0, quadratic_form(cov, dim, theta.coords()) - optimal);
  };
  p.oracle_metadata = [optimal] {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", optimal);
    return std::map<std::string, std::string>{
        {"true_risk", "closed form theta' Sigma theta"}, {"optimal_risk", buf}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

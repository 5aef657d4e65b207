#include "vote_ensemble/problems/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/problems/pareto.hpp"

namespace vote_ensemble::problems {

namespace {

/// Minimum-cost assignment (rows to columns) with potentials, O(r^2 c).
/// Returns the optimal cost; `assign[i]` receives row i's column.
double hungarian_min_cost(const std::vector<double>& cost, std::size_t rows,
                          std::size_t cols, std::vector<std::size_t>& assign) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start.
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> owner(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * cols + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  assign.assign(rows, 0);
  double total = 0.0;
  for (std::size_t j = 1; j <= cols; ++j) {
    if (owner[j] != 0) {
      assign[owner[j] - 1] = j - 1;
      total += cost[(owner[j] - 1) * cols + (j - 1)];
    }
  }
  return total;
}

/// Best total weight over rows [first, side) using only `free_cols`.
double best_completion(std::span<const double> weights, std::size_t side, std::size_t first,
                       const std::vector<std::size_t>& free_cols) {
  const std::size_t rows = side - first;
  if (rows == 0) return 0.0;
  std::vector<double> cost(rows * free_cols.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
      cost[i * free_cols.size() + j] = -weights[(first + i) * side + free_cols[j]];
    }
  }
  std::vector<std::size_t> assign;
  return -hungarian_min_cost(cost, rows, free_cols.size(), assign);
}

}  // namespace

double EdgeWeight::mean() const {
  return random ? value * ParetoSpec(shape).mean() : value;
}

void MatchingParams::validate() const {
  if (side == 0 || side > kMaxMatchingSide) {
    throw InvalidField("side", "must be in [1, " + std::to_string(kMaxMatchingSide) + "]");
  }
  if (edges.size() != side * side) {
    throw InvalidField("edges", "need side*side = " + std::to_string(side * side) +
                                    " edge weights");
  }
  for (const auto& e : edges) {
    if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
      throw InvalidField("edges", "weights and scales must be finite and >= 0");
    }
    if (e.random) static_cast<void>(ParetoSpec(e.shape));
  }
}

std::vector<std::size_t> max_weight_assignment(std::span<const double> weights,
                                               std::size_t side) {
  if (side == 0 || weights.size() != side * side) {
    throw InvalidArgument("weight matrix must be side x side");
  }
  double scale = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw InvalidArgument("weights must be finite");
    scale = std::max(scale, std::abs(w));
  }
  std::vector<std::size_t> all(side);
  for (std::size_t j = 0; j < side; ++j) all[j] = j;
  const double optimum = best_completion(weights, side, 0, all);
  // Sums of `side` terms differ from the exact optimum by at most a few ulps
  // of side * scale; distinct assignments closer than this count as tied.
  const double tolerance = 1e-10 * (1.0 + static_cast<double>(side) * scale);

  // Fix rows in order, taking the smallest column that keeps the optimum.
  std::vector<std::size_t> perm(side);
  std::vector<std::size_t> free_cols = all;
  double fixed = 0.0;
  for (std::size_t row = 0; row < side; ++row) {
    bool placed = false;
    for (std::size_t c = 0; c < free_cols.size() && !placed; ++c) {
      std::vector<std::size_t> rest = free_cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(c));
      const double w = weights[row * side + free_cols[c]];
      const double value = fixed + w + best_completion(weights, side, row + 1, rest);
      if (value >= optimum - tolerance) {
        perm[row] = free_cols[c];
        fixed += w;
        free_cols = std::move(rest);
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("assignment tie-break lost the optimum");
  }
  return perm;
}

double assignment_weight(std::span<const double> weights, std::span<const std::size_t> perm) {
  const std::size_t side = perm.size();
  double total = 0.0;
  for (std::size_t i = 0; i < side; ++i) total += weights[i * side + perm[i]];
  return total;
}

core::SampleBatch<MatchingObservation> gen_matching(std::size_t n, const MatchingParams& params,
                                                    Rng& rng) {
  params.validate();
  if (n == 0) throw InvalidArgument("sample size must be positive");
  std::vector<MatchingObservation> out(n, MatchingObservation(params.edges.size()));
  for (auto& w : out) {
    for (std::size_t e = 0; e < params.edges.size(); ++e) {
      const auto& edge = params.edges[e];
      w[e] = edge.random ? edge.value * ParetoSpec(edge.shape).sample(rng) : edge.value;
    }
  }
  return core::SampleBatch<MatchingObservation>(std::move(out));
}

namespace {

Model permutation_model(const std::vector<std::size_t>& perm) {
  std::vector<std::int64_t> coords(perm.begin(), perm.end());
  return Model::discrete(coords);
}

std::vector<std::size_t> model_permutation(const Model& m, std::size_t side) {
  if (m.dimension() != side) throw InvalidArgument("permutation has the wrong size");
  std::vector<std::size_t> perm(side);
  for (std::size_t i = 0; i < side; ++i) perm[i] = static_cast<std::size_t>(m.integer(i));
  return perm;
}

}  // namespace

Model matching_saa(std::span<const MatchingObservation> batch, const MatchingParams& params) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  std::vector<double> mean(params.side * params.side, 0.0);
  for (const auto& w : batch) {
    for (std::size_t e = 0; e < mean.size(); ++e) mean[e] += w[e];
  }
  for (auto& v : mean) v /= static_cast<double>(batch.size());
  return permutation_model(max_weight_assignment(mean, params.side));
}

double matching_loss(const Model& perm, const MatchingObservation& weights) {
  const std::size_t side = perm.dimension();
  double total = 0.0;
  for (std::size_t i = 0; i < side; ++i) {
    total += weights[i * side + static_cast<std::size_t>(perm.integer(i))];
  }
  return -total;
}

double matching_true_risk(const Model& perm, const MatchingParams& params) {
  const auto p = model_permutation(perm, params.side);
  double total = 0.0;
  for (std::size_t i = 0; i < params.side; ++i) {
    total += params.edges[i * params.side + p[i]].mean();
  }
  return -total;
}

StochasticProblem<MatchingObservation> make_matching(MatchingParams params) {
  params.validate();
  std::vector<double> expected(params.edges.size());
  for (std::size_t e = 0; e < expected.size(); ++e) expected[e] = params.edges[e].mean();
  const auto best = max_weight_assignment(expected, params.side);
  const double optimal = -assignment_weight(expected, best);

  StochasticProblem<MatchingObservation> p;
  p.name = "matching";
  p.discrete_models = true;
  p.generate = [params](std::size_t n, Rng& rng) { return gen_matching(n, params, rng); };
  p.learner = [params](std::span<const MatchingObservation> batch, Rng&) {
    return matching_saa(batch, params);
  };
  p.loss = matching_loss;
  p.true_risk = [params](const Model& m) { return matching_true_risk(m, params); };
  p.excess_risk = [params, optimal](const Model& m) {
    return matching_true_risk(m, params) - optimal;
  };
  p.oracle_metadata = [] {
    return std::map<std::string, std::string>{{"true_risk", "closed form Pareto means"}};
  };
  return p;
}

}  // namespace vote_ensemble::problems

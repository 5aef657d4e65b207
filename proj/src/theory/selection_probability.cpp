#include "vote_ensemble/theory/selection_probability.hpp"

#include <algorithm>
#include <limits>

namespace vote_ensemble::theory {

double PkTable::max_probability() const {
  return entries.empty() ? 0.0 : entries.front().p_hat;
}

double PkTable::probability(const ModelKey& key) const {
  for (const auto& e : entries) {
    if (e.model.key() == key) return e.p_hat;
  }
  return 0.0;
}

PkTable make_pk_table(const std::map<ModelKey, std::pair<Model, std::uint64_t>>& counts,
                      std::uint64_t trials, std::size_t k, bool exact) {
  PkTable table;
  table.trials = trials;
  table.k = k;
  const auto total = static_cast<double>(trials);
  for (const auto& [key, value] : counts) {
    PkEntry e;
    e.model = value.first;
    e.p_hat = static_cast<double>(value.second) / total;
    e.se = exact ? 0.0 : std::sqrt(e.p_hat * (1.0 - e.p_hat) / total);
    table.entries.push_back(std::move(e));
  }
  // Map order is ModelKey order; a stable sort keeps it among equal p_hat.
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const PkEntry& a, const PkEntry& b) { return a.p_hat > b.p_hat; });
  return table;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

double eta_from_pk(const PkTable& table, const std::set<ModelKey>& delta_optimal) {
  if (delta_optimal.empty()) throw InvalidArgument("delta-optimal set must be non-empty");
  double best = 0.0;
  double best_outside = 0.0;
  for (const auto& e : table.entries) {
    best = std::max(best, e.p_hat);
    if (!delta_optimal.contains(e.model.key())) best_outside = std::max(best_outside, e.p_hat);
  }
  return best - best_outside;
}

}  // namespace vote_ensemble::theory

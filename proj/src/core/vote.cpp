#include "vote_ensemble/core/vote.hpp"

#include <algorithm>
#include <numeric>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::core {

std::size_t VoteTally::sum() const {
  return std::accumulate(entries.begin(), entries.end(), std::size_t{0},
                         [](std::size_t acc, const TallyEntry& e) { return acc + e.count; });
}

std::size_t VoteTally::winner_index() const {
  if (entries.empty()) throw InvalidArgument("empty tally has no winner");
  std::size_t best = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& cand = entries[i];
    const auto& cur = entries[best];
    if (cand.count > cur.count ||
        (cand.count == cur.count && cand.model.key() < cur.model.key())) {
      best = i;
    }
  }
  return best;
}

BallotLosses::BallotLosses(std::size_t ballots, std::size_t models,
                           std::vector<double> row_major)
    : ballots_(ballots), models_(models), means_(std::move(row_major)) {
  if (ballots_ == 0 || models_ == 0) {
    throw InvalidArgument("ballot loss table needs at least one ballot and one model");
  }
  if (means_.size() != ballots_ * models_) {
    throw InvalidArgument("ballot loss table has the wrong number of entries");
  }
  gaps_.resize(means_.size());
  for (std::size_t b = 0; b < ballots_; ++b) {
    const auto row = means_.begin() + static_cast<std::ptrdiff_t>(b * models_);
    const auto [lo, hi] = std::minmax_element(row, row + static_cast<std::ptrdiff_t>(models_));
    spread_ = std::max(spread_, *hi - *lo);
    for (std::size_t s = 0; s < models_; ++s) {
      gaps_[b * models_ + s] = means_[b * models_ + s] - *lo;
    }
  }
}

std::vector<std::size_t> BallotLosses::votes(double epsilon) const {
  std::vector<std::size_t> counts(models_, 0);
  for (std::size_t b = 0; b < ballots_; ++b) {
    for (std::size_t s = 0; s < models_; ++s) {
      if (gaps_[b * models_ + s] <= epsilon) ++counts[s];
    }
  }
  return counts;
}

double BallotLosses::max_vote_fraction(double epsilon) const {
  const auto counts = votes(epsilon);
  const auto best = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(best) / static_cast<double>(ballots_);
}

double select_epsilon(const BallotLosses& losses) {
  if (losses.max_vote_fraction(0.0) >= 0.5) return 0.0;
  const double spread = losses.spread();
  const double tolerance = 1e-6 * (1.0 + spread);
  double lo = 0.0;
  double hi = spread;
  while (hi - lo > tolerance) {
    const double mid = lo + 0.5 * (hi - lo);
    if (losses.max_vote_fraction(mid) >= 0.5) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace vote_ensemble::core

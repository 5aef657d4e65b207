#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vote_ensemble/model.hpp"

namespace vote_ensemble::core {

struct TallyEntry {
  Model model;
  std::size_t count = 0;
};

/// Vote counts per model. MoVE entries are in ModelKey order; ROVE entries
/// follow the retrieved-set order.
struct VoteTally {
  std::vector<TallyEntry> entries;
  std::size_t total_ballots = 0;

  std::size_t sum() const;
  /// Index of the entry with maximal count; ties go to the smallest ModelKey.
  std::size_t winner_index() const;
};

struct EnsembleOutput {
  Model model;
  VoteTally tally;
  std::vector<Model> retrieved;   // ROVE only
  std::optional<double> epsilon;  // ROVE only
};

/// Mean loss of every retrieved model on every voting subsample.
///
/// Rows are ballots, columns are models. Stores each entry's gap to the
/// ballot minimum, which is all the ε-optimality vote needs.
class BallotLosses {
 public:
  /// `row_major` holds ballots * models finite mean losses.
  BallotLosses(std::size_t ballots, std::size_t models, std::vector<double> row_major);

  std::size_t ballots() const noexcept { return ballots_; }
  std::size_t models() const noexcept { return models_; }
  double mean_loss(std::size_t ballot, std::size_t model) const {
    return means_[ballot * models_ + model];
  }
  double gap(std::size_t ballot, std::size_t model) const {
    return gaps_[ballot * models_ + model];
  }

  /// Largest within-ballot loss range; every model is ε-optimal beyond it.
  double spread() const noexcept { return spread_; }

  /// Number of ballots on which each model is within ε of the ballot minimum.
  std::vector<std::size_t> votes(double epsilon) const;

  /// Maximal vote fraction over models at threshold ε.
  double max_vote_fraction(double epsilon) const;

 private:
  std::size_t ballots_;
  std::size_t models_;
  std::vector<double> means_;
  std::vector<double> gaps_;
  double spread_ = 0.0;
};

/// Smallest ε on the bisection grid over [0, spread] whose maximal vote
/// fraction reaches 1/2. The bracket closes at 1e-6 * (1 + spread).
double select_epsilon(const BallotLosses& losses);

}  // namespace vote_ensemble::core

#pragma once

#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::problems {

/// Pareto law with scale 1 and shape α > 1: P(X > x) = x^{-α} on [1, ∞).
class ParetoSpec {
 public:
  explicit ParetoSpec(double shape);

  double shape() const noexcept { return shape_; }
  double mean() const noexcept { return shape_ / (shape_ - 1.0); }
  /// Finite only for α > 2; +inf otherwise.
  double variance() const noexcept;
  /// E[X^j], +inf when j >= α.
  double raw_moment(int j) const noexcept;

  /// Inverse-CDF draw; consumes one value from the stream.
  double sample(Rng& rng) const;

 private:
  double shape_;
};

}  // namespace vote_ensemble::problems

#include "vote_ensemble/problems/pareto.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::problems {

ParetoSpec::ParetoSpec(double shape) : shape_(shape) {
  if (!(shape > 1.0) || !std::isfinite(shape)) {
    throw InvalidField("alpha", "Pareto shape must be finite and > 1, got " +
                                    std::to_string(shape));
  }
}

double ParetoSpec::variance() const noexcept {
  if (shape_ <= 2.0) return std::numeric_limits<double>::infinity();
  const double a = shape_;
  return a / ((a - 1.0) * (a - 1.0) * (a - 2.0));
}

double ParetoSpec::raw_moment(int j) const noexcept {
  if (static_cast<double>(j) >= shape_) return std::numeric_limits<double>::infinity();
  return shape_ / (shape_ - static_cast<double>(j));
}

double ParetoSpec::sample(Rng& rng) const {
  // 1 - U lies in (0, 1], so the draw is >= 1 and finite.
  return std::pow(1.0 - rng.uniform01(), -1.0 / shape_);
}

}  // namespace vote_ensemble::problems

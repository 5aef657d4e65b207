#include "vote_ensemble/theory/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/theory/kl.hpp"

namespace vote_ensemble::theory {

void BoundInputs::validate() const {
  if (!(p_max > 0.0 && p_max <= 1.0)) throw InvalidField("p_max", "must lie in (0, 1]");
  if (!(eta > 0.0 && eta <= p_max)) throw InvalidField("eta", "must lie in (0, p_max]");
  if (n == 0) throw InvalidField("n", "must be >= 1");
  if (k == 0) throw InvalidField("k", "must be >= 1");
  if (k > n) throw InvalidField("k", "must be <= n");
  if (B == 0) throw InvalidField("B", "must be >= 1");
  if (cardinality == 0) throw InvalidField("cardinality", "must be >= 1");
}

namespace {

// Clamp away rounding excursions outside [0, 1] in shifted arguments.
double unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

MoveBoundTerms move_bound_terms(const BoundInputs& in) {
  in.validate();
  const double p = in.p_max;
  const double eta = in.eta;
  const double ratio = static_cast<double>(in.n) / (2.0 * static_cast<double>(in.k));
  const double b24 = static_cast<double>(in.B) / 24.0;

  MoveBoundTerms t;
  t.lower_tail = std::exp(-ratio * kl_bernoulli(unit(p - 0.75 * eta), unit(p - eta)));
  t.upper_tail = 2.0 * std::exp(-ratio * kl_bernoulli(unit(p - 0.25 * eta), p));
  t.monte_carlo = std::exp(-b24 * eta * eta / (std::min(p, 1.0 - p) + 0.75 * eta));
  if (p + 0.25 * eta <= 1.0) {
    t.joint = std::exp(-ratio * kl_bernoulli(p + 0.25 * eta, p) -
                       b24 * eta * eta / (1.0 - p + 0.25 * eta));
  }
  t.per_model = t.lower_tail + t.upper_tail + t.monte_carlo + t.joint;
  t.total = static_cast<double>(in.cardinality) * t.per_model;
  return t;
}

double move_bound(const BoundInputs& inputs) { return move_bound_terms(inputs).total; }

}  // namespace vote_ensemble::theory

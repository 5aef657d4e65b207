#include "vote_ensemble/theory/kl.hpp"

#include <cmath>
#include <limits>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::theory {

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("kl_bernoulli: p must lie in [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("kl_bernoulli: q must lie in [0, 1]");
  if (q == 0.0 || q == 1.0) {
    return p == q ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  // Rounding can leave a tiny negative value when p is close to q.
  return d > 0.0 ? d : 0.0;
}

}  // namespace vote_ensemble::theory

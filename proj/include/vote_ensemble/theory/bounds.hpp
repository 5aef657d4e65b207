#pragma once

#include <cstdint>

namespace vote_ensemble::theory {

/// Inputs of the MoVE finite-sample tail bound.
struct BoundInputs {
  double p_max = 0.0;  // max_θ p_k(θ), in (0, 1]
  double eta = 0.0;    // η_{k,δ}, in (0, p_max]
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t B = 0;
  std::uint64_t cardinality = 0;  // |Θ|

  /// Throws InvalidField naming the first violated constraint.
  void validate() const;
};

/// The four per-model terms of the bound; `total` is cardinality times their sum.
struct MoveBoundTerms {
  double lower_tail = 0.0;   // exp(-(n/2k) D(p - 3η/4 || p - η))
  double upper_tail = 0.0;   // 2 exp(-(n/2k) D(p - η/4 || p))
  double monte_carlo = 0.0;  // exp(-(B/24) η² / (min{p, 1-p} + 3η/4))
  double joint = 0.0;        // 1{p + η/4 <= 1} exp(-(n/2k) D(p + η/4 || p) - (B/24) η² / (1 - p + η/4))
  double per_model = 0.0;
  double total = 0.0;
};

/// Tail bound on P(L(θ̂_MoVE) > min L + δ) for discrete Θ:
///   |Θ| [lower_tail + upper_tail + monte_carlo + joint].
/// KL terms with a degenerate second argument contribute exp(-inf) = 0.
MoveBoundTerms move_bound_terms(const BoundInputs& inputs);

double move_bound(const BoundInputs& inputs);

}  // namespace vote_ensemble::theory

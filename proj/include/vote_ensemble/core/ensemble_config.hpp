#pragma once

#include <cstddef>

namespace vote_ensemble::core {

/// Threshold policy for the ε-optimality vote.
class EpsilonMode {
 public:
  static EpsilonMode fixed(double epsilon);
  static EpsilonMode adaptive() { return EpsilonMode(true, 0.0); }

  bool is_adaptive() const noexcept { return adaptive_; }
  double fixed_value() const noexcept { return value_; }

  friend bool operator==(const EpsilonMode&, const EpsilonMode&) = default;

 private:
  EpsilonMode(bool adaptive, double value) : adaptive_(adaptive), value_(value) {}

  bool adaptive_;
  double value_;
};

/// Subsample and ensemble sizes for MoVE (k, B) and ROVE/ROVEs (k1, k2, B1, B2).
struct EnsembleConfig {
  std::size_t k = 10;
  std::size_t k1 = 10;
  std::size_t k2 = 10;
  std::size_t B = 200;
  std::size_t B1 = 20;
  std::size_t B2 = 200;
  bool split = false;
  EpsilonMode epsilon = EpsilonMode::adaptive();

  /// Throws InvalidField unless 1 <= k < n and B >= 1.
  void validate_move(std::size_t n) const;
  /// Throws InvalidField unless k1, k2 < n (no split) or <= n/2 (split),
  /// and B1, B2 >= 1.
  void validate_rove(std::size_t n) const;
};

}  // namespace vote_ensemble::core

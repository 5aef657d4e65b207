#include "vote_ensemble/core/ensemble_config.hpp"

#include <cmath>
#include <string>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::core {

EpsilonMode EpsilonMode::fixed(double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidField("epsilon", "must be >= 0");
  return EpsilonMode(false, epsilon);
}

namespace {

void require_positive(const char* field, std::size_t value) {
  if (value == 0) throw InvalidField(field, "must be >= 1");
}

}  // namespace

void EnsembleConfig::validate_move(std::size_t n) const {
  require_positive("k", k);
  require_positive("B", B);
  if (k >= n) {
    throw InvalidField("k", "subsample size " + std::to_string(k) +
                                " must be < n = " + std::to_string(n));
  }
}

void EnsembleConfig::validate_rove(std::size_t n) const {
  require_positive("k1", k1);
  require_positive("k2", k2);
  require_positive("B1", B1);
  require_positive("B2", B2);
  const auto check = [&](const char* field, std::size_t value) {
    if (split) {
      if (value > n / 2) {
        throw InvalidField(field, "subsample size " + std::to_string(value) +
                                      " must be <= floor(n/2) = " +
                                      std::to_string(n / 2) + " when splitting");
      }
    } else if (value >= n) {
      throw InvalidField(field, "subsample size " + std::to_string(value) +
                                    " must be < n = " + std::to_string(n));
    }
  };
  check("k1", k1);
  check("k2", k2);
}

}  // namespace vote_ensemble::core

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::core {

/// Ordered, non-empty collection of observations z_1..z_n.
template <class Obs>
class SampleBatch {
 public:
  using value_type = Obs;

  explicit SampleBatch(std::vector<Obs> items) : items_(std::move(items)) {
    if (items_.empty()) throw InvalidArgument("sample batch must be non-empty");
  }

  std::size_t size() const noexcept { return items_.size(); }
  const Obs& operator[](std::size_t i) const { return items_[i]; }
  std::span<const Obs> items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

 private:
  std::vector<Obs> items_;
};

}  // namespace vote_ensemble::core

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vote_ensemble {

/// Raised when a caller violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value violates its constraint; `field()` names it.
class InvalidField : public InvalidArgument {
 public:
  InvalidField(std::string field, const std::string& what)
      : InvalidArgument(field + ": " + what), field_(std::move(field)), message_(what) {}

  const std::string& field() const noexcept { return field_; }
  /// The explanation without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// A base learner threw while training on one of the ensemble's subsamples.
class LearnerFailure : public std::runtime_error {
 public:
  LearnerFailure(std::size_t subsample_index, const std::string& what)
      : std::runtime_error("base learner failed on subsample " +
                           std::to_string(subsample_index) + ": " + what),
        subsample_index_(subsample_index) {}

  std::size_t subsample_index() const noexcept { return subsample_index_; }

 private:
  std::size_t subsample_index_;
};

/// A loss oracle returned NaN or infinity.
class NonFiniteLoss : public std::runtime_error {
 public:
  NonFiniteLoss(std::size_t model_index, std::size_t data_index)
      : std::runtime_error("non-finite loss for model " +
                           std::to_string(model_index) + " at data index " +
                           std::to_string(data_index)),
        model_index_(model_index),
        data_index_(data_index) {}

  std::size_t model_index() const noexcept { return model_index_; }
  std::size_t data_index() const noexcept { return data_index_; }

 private:
  std::size_t model_index_;
  std::size_t data_index_;
};

}  // namespace vote_ensemble

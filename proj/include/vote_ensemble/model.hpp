#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vote_ensemble {

/// Canonical byte encoding of a trained model.
///
/// Equality is bitwise and ordering is lexicographic on the bytes. The
/// encoding is order-preserving per coordinate, so for scalar models the key
/// order agrees with numeric order.
class ModelKey {
 public:
  ModelKey() = default;
  explicit ModelKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::string hex() const;

  friend bool operator==(const ModelKey&, const ModelKey&) = default;
  friend std::strong_ordering operator<=>(const ModelKey& a, const ModelKey& b) {
    return a.bytes_ <=> b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
};

enum class ModelKind : std::uint8_t { discrete = 0, continuous = 1 };

/// A model θ: its coordinates plus the key used for voting and tie-breaking.
class Model {
 public:
  Model() = default;

  /// Integer-valued model; coordinates are encoded exactly.
  static Model discrete(const std::vector<std::int64_t>& coords);
  /// Real-valued model; coordinates are encoded by their bit pattern with
  /// -0.0 folded into +0.0. NaN coordinates are rejected.
  static Model continuous(std::vector<double> coords);

  ModelKind kind() const noexcept { return kind_; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t integer(std::size_t i) const {
    return static_cast<std::int64_t>(coords_[i]);
  }
  const ModelKey& key() const noexcept { return key_; }

  /// Human-readable form: coordinates joined by ';'.
  std::string to_string() const;

  friend bool operator==(const Model& a, const Model& b) { return a.key_ == b.key_; }

 private:
  ModelKind kind_ = ModelKind::discrete;
  std::vector<double> coords_;
  ModelKey key_;
};

}  // namespace vote_ensemble

template <>
struct std::hash<vote_ensemble::ModelKey> {
  std::size_t operator()(const vote_ensemble::ModelKey& key) const noexcept;
};

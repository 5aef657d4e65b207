#include "vote_ensemble/model.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/rng.hpp"

namespace vote_ensemble {

namespace {

void append_big_endian(std::vector<std::uint8_t>& out, std::uint64_t word) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(word >> shift));
  }
}

// Maps IEEE-754 doubles onto unsigned words whose order matches numeric order.
std::uint64_t order_preserving_bits(double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  constexpr std::uint64_t sign = 0x8000000000000000ULL;
  return (bits & sign) ? ~bits : (bits | sign);
}

}  // namespace

std::string ModelKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (auto b : bytes_) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Model Model::discrete(const std::vector<std::int64_t>& coords) {
  Model m;
  m.kind_ = ModelKind::discrete;
  std::vector<std::uint8_t> bytes;
  bytes.reserve(1 + 8 * coords.size());
  bytes.push_back(static_cast<std::uint8_t>(ModelKind::discrete));
  m.coords_.reserve(coords.size());
  for (auto v : coords) {
    append_big_endian(bytes, static_cast<std::uint64_t>(v) ^ 0x8000000000000000ULL);
    m.coords_.push_back(static_cast<double>(v));
  }
  m.key_ = ModelKey(std::move(bytes));
  return m;
}

Model Model::continuous(std::vector<double> coords) {
  Model m;
  m.kind_ = ModelKind::continuous;
  std::vector<std::uint8_t> bytes;
  bytes.reserve(1 + 8 * coords.size());
  bytes.push_back(static_cast<std::uint8_t>(ModelKind::continuous));
  for (auto& v : coords) {
    if (std::isnan(v)) throw InvalidArgument("model coordinate is NaN");
    if (v == 0.0) v = 0.0;
    append_big_endian(bytes, order_preserving_bits(v));
  }
  m.coords_ = std::move(coords);
  m.key_ = ModelKey(std::move(bytes));
  return m;
}

std::string Model::to_string() const {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out.push_back(';');
    if (kind_ == ModelKind::discrete) {
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(integer(i)));
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
    }
    out += buf;
  }
  return out;
}

}  // namespace vote_ensemble

std::size_t std::hash<vote_ensemble::ModelKey>::operator()(
    const vote_ensemble::ModelKey& key) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (auto b : key.bytes()) h = vote_ensemble::mix64(h ^ b);
  return static_cast<std::size_t>(h);
}

#include "vote_ensemble/harness/seed.hpp"

#include <cstddef>

#include "vote_ensemble/rng.hpp"

namespace vote_ensemble::harness {

namespace {

class Folder {
 public:
  explicit Folder(std::uint64_t master) : state_(mix64(master)) {}

  void word(std::uint64_t w) {
    state_ = mix64(state_ ^ mix64(w + 0x9e3779b97f4a7c15ULL * ++count_));
  }
  std::uint64_t value() const { return mix64(state_ ^ count_); }

 private:
  std::uint64_t state_;
  std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t n,
                          std::uint64_t replication) {
  Folder f(master);
  f.word(label.size());
  std::uint64_t packed = 0;
  std::size_t filled = 0;
  for (unsigned char c : label) {
    packed = (packed << 8) | c;
    if (++filled == 8) {
      f.word(packed);
      packed = 0;
      filled = 0;
    }
  }
  if (filled) f.word(packed);
  f.word(n);
  f.word(replication);
  return f.value();
}

}  // namespace vote_ensemble::harness

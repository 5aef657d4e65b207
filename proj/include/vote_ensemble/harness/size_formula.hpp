#pragma once

#include <cstddef>
#include <memory>
#include <string>

namespace vote_ensemble::harness {

/// Integer-valued formula in the sample size n, e.g. "max(10, n/200)".
///
/// Grammar: expr := term (('+' | '-') term)*, term := factor (('*' | '/')
/// factor)*, factor := number | 'n' | ('max' | 'min') '(' expr ',' expr ')'
/// | '(' expr ')'. Arithmetic is real-valued; the result is floored.
class SizeFormula {
 public:
  /// Throws InvalidArgument with the offending column on a syntax error.
  static SizeFormula parse(const std::string& text);
  static SizeFormula constant(std::size_t value);

  /// floor(value at n); throws InvalidArgument if that is below 1.
  std::size_t evaluate(std::size_t n) const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace vote_ensemble::harness

#include "vote_ensemble/harness/size_formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "vote_ensemble/error.hpp"

namespace vote_ensemble::harness {

struct SizeFormula::Node {
  enum class Op { number, n, add, sub, mul, div, max, min } op;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double n) const {
    switch (op) {
      case Op::number: return value;
      case Op::n: return n;
      case Op::add: return lhs->eval(n) + rhs->eval(n);
      case Op::sub: return lhs->eval(n) - rhs->eval(n);
      case Op::mul: return lhs->eval(n) * rhs->eval(n);
      case Op::div: return lhs->eval(n) / rhs->eval(n);
      case Op::max: return std::max(lhs->eval(n), rhs->eval(n));
      case Op::min: return std::min(lhs->eval(n), rhs->eval(n));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const SizeFormula::Node>;
using Op = SizeFormula::Node::Op;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("formula '" + std::string(text_) + "' column " +
                          std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static NodePtr binary(Op op, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<SizeFormula::Node>();
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::mul, lhs, factor());
      } else if (accept('/')) {
        lhs = binary(Op::div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept('(')) {
      auto inner = expr();
      expect(')');
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      auto node = std::make_shared<SizeFormula::Node>();
      node->op = Op::number;
      node->value = v;
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const auto word = text_.substr(start, pos_ - start);
      if (word == "n") {
        auto node = std::make_shared<SizeFormula::Node>();
        node->op = Op::n;
        return node;
      }
      if (word == "max" || word == "min") {
        expect('(');
        auto a = expr();
        expect(',');
        auto b = expr();
        expect(')');
        return binary(word == "max" ? Op::max : Op::min, a, b);
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SizeFormula SizeFormula::parse(const std::string& text) {
  SizeFormula f;
  f.text_ = text;
  f.root_ = Parser(text).parse();
  return f;
}

SizeFormula SizeFormula::constant(std::size_t value) {
  return parse(std::to_string(value));
}

std::size_t SizeFormula::evaluate(std::size_t n) const {
  const double v = std::floor(root_->eval(static_cast<double>(n)));
  if (!(v >= 1.0) || !std::isfinite(v)) {
    throw InvalidArgument("formula '" + text_ + "' evaluates below 1 at n = " +
                          std::to_string(n));
  }
  return static_cast<std::size_t>(v);
}

}  // namespace vote_ensemble::harness

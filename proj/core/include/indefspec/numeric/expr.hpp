#pragma once

#include <memory>
#include <string>

namespace indefspec {

/// Closed-form expression in one named variable, parsed from text.
/// Grammar: numbers, the variable, constants pi/e, + - * / ^ with unary
/// minus, parentheses, and calls to sin cos tan asin acos atan sinh cosh
/// tanh exp log log10 sqrt abs sign floor ceil pow(a,b) min(a,b) max(a,b).
/// `^` is right-associative power.
class Expr {
 public:
  Expr() = default;

  /// Parses `text` with free variable `var`; throws Errc::invalid_spec on
  /// syntax errors or unknown identifiers.
  static Expr parse(const std::string& text, const std::string& var);

  double operator()(double x) const;
  bool valid() const { return bool(root_); }
  const std::string& text() const { return text_; }

  struct Node;  // exposed for the parser translation unit

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace indefspec

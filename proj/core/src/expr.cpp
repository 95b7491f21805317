#include "indefspec/numeric/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

#include "indefspec/error.hpp"

namespace indefspec {

namespace {

enum class Op {
  constant, variable,
  add, sub, mul, div, pow, neg,
  sin, cos, tan, asin, acos, atan, sinh, cosh, tanh,
  exp, log, log10, sqrt, abs, sign, floor, ceil,
  min, max,
};

bool is_binary(Op op) {
  switch (op) {
    case Op::add: case Op::sub: case Op::mul: case Op::div:
    case Op::pow: case Op::min: case Op::max:
      return true;
    default:
      return false;
  }
}

}  // namespace

struct Expr::Node {
  Op op = Op::constant;
  double value = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  Parser(const std::string& text, const std::string& var) : s_(text), var_(var) {}

  NodePtr run() {
    NodePtr n = expression();
    skip_ws();
    if (pos_ != s_.size())
      fail(Errc::invalid_spec, "trailing characters in expression: '" + s_.substr(pos_) + "'");
    return n;
  }

 private:
  NodePtr make(Op op, double v = 0, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->value = v;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr n = term();
    for (;;) {
      if (eat('+'))
        n = make(Op::add, 0, n, term());
      else if (eat('-'))
        n = make(Op::sub, 0, n, term());
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*'))
        n = make(Op::mul, 0, n, unary());
      else if (eat('/'))
        n = make(Op::div, 0, n, unary());
      else
        return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, 0, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::pow, 0, base, unary());  // right-assoc, binds unary minus in exponent
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail(Errc::invalid_spec, "unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (eat('(')) {
      NodePtr n = expression();
      if (!eat(')')) fail(Errc::invalid_spec, "missing ')' in expression");
      return n;
    }
    fail(Errc::invalid_spec, std::string("unexpected character '") + c + "' in expression");
  }

  NodePtr number() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
            s_[end] == 'e' || s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
             (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    double v = 0;
    try {
      size_t used = 0;
      v = std::stod(s_.substr(pos_, end - pos_), &used);
      end = pos_ + used;
    } catch (const std::exception&) {
      fail(Errc::invalid_spec, "bad numeric literal in expression");
    }
    pos_ = end;
    return make(Op::constant, v);
  }

  NodePtr identifier() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      ++end;
    std::string name = s_.substr(pos_, end - pos_);
    pos_ = end;

    if (name == var_) return make(Op::variable);
    if (name == "pi") return make(Op::constant, M_PI);
    if (name == "e") return make(Op::constant, M_E);

    static const std::pair<const char*, Op> unary_fns[] = {
        {"sin", Op::sin},   {"cos", Op::cos},   {"tan", Op::tan},
        {"asin", Op::asin}, {"acos", Op::acos}, {"atan", Op::atan},
        {"sinh", Op::sinh}, {"cosh", Op::cosh}, {"tanh", Op::tanh},
        {"exp", Op::exp},   {"log", Op::log},   {"log10", Op::log10},
        {"sqrt", Op::sqrt}, {"abs", Op::abs},   {"sign", Op::sign},
        {"floor", Op::floor}, {"ceil", Op::ceil},
    };
    static const std::pair<const char*, Op> binary_fns[] = {
        {"pow", Op::pow}, {"min", Op::min}, {"max", Op::max},
    };

    for (const auto& [fname, op] : unary_fns) {
      if (name == fname) {
        if (!eat('(')) fail(Errc::invalid_spec, name + " requires parentheses");
        NodePtr a = expression();
        if (!eat(')')) fail(Errc::invalid_spec, "missing ')' after " + name);
        return make(op, 0, a);
      }
    }
    for (const auto& [fname, op] : binary_fns) {
      if (name == fname) {
        if (!eat('(')) fail(Errc::invalid_spec, name + " requires parentheses");
        NodePtr a = expression();
        if (!eat(',')) fail(Errc::invalid_spec, name + " requires two arguments");
        NodePtr b = expression();
        if (!eat(')')) fail(Errc::invalid_spec, "missing ')' after " + name);
        return make(op, 0, a, b);
      }
    }
    fail(Errc::invalid_spec, "unknown identifier '" + name + "' (variable is '" + var_ + "')");
  }

  const std::string& s_;
  std::string var_;
  size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, double x) {
  auto A = [&] { return eval_node(*n.a, x); };
  auto B = [&] { return eval_node(*n.b, x); };
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return x;
    case Op::add: return A() + B();
    case Op::sub: return A() - B();
    case Op::mul: return A() * B();
    case Op::div: return A() / B();
    case Op::pow: return std::pow(A(), B());
    case Op::neg: return -A();
    case Op::sin: return std::sin(A());
    case Op::cos: return std::cos(A());
    case Op::tan: return std::tan(A());
    case Op::asin: return std::asin(A());
    case Op::acos: return std::acos(A());
    case Op::atan: return std::atan(A());
    case Op::sinh: return std::sinh(A());
    case Op::cosh: return std::cosh(A());
    case Op::tanh: return std::tanh(A());
    case Op::exp: return std::exp(A());
    case Op::log: return std::log(A());
    case Op::log10: return std::log10(A());
    case Op::sqrt: return std::sqrt(A());
    case Op::abs: return std::abs(A());
    case Op::sign: {
      double v = A();
      return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
    }
    case Op::floor: return std::floor(A());
    case Op::ceil: return std::ceil(A());
    case Op::min: return std::min(A(), B());
    case Op::max: return std::max(A(), B());
  }
  return 0;  // unreachable
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::string& var) {
  Expr e;
  e.root_ = Parser(text, var).run();
  e.text_ = text;
  return e;
}

double Expr::operator()(double x) const {
  if (!root_) fail(Errc::invalid_spec, "evaluating empty expression");
  return eval_node(*root_, x);
}

}  // namespace indefspec

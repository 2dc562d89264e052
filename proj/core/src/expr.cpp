#include "desinc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "desinc/errors.hpp"

namespace desinc {

namespace {

Expression make_literal(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Literal;
  n->literal = v;
  return n;
}

Expression make_variable() {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Variable;
  return n;
}

Expression make_unary(Expression operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Unary;
  n->op = '-';
  n->lhs = std::move(operand);
  return n;
}

Expression make_binary(char op, Expression lhs, Expression rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expression make_call(std::string func, Expression arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Call;
  n->func = std::move(func);
  n->lhs = std::move(arg);
  return n;
}

bool known_function(const std::string& name) {
  return name == "exp" || name == "log" || name == "sqrt" || name == "sin" ||
         name == "cos" || name == "tan" || name == "sinh" || name == "cosh" ||
         name == "tanh" || name == "erf" || name == "abs";
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  Expression run() {
    Expression e = parse_sum();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected token '" + std::string(1, src_[pos_]) + "'",
                       pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Expression parse_sum() {
    Expression e = parse_product();
    for (;;) {
      if (eat('+'))
        e = make_binary('+', e, parse_product());
      else if (eat('-'))
        e = make_binary('-', e, parse_product());
      else
        return e;
    }
  }

  Expression parse_product() {
    Expression e = parse_factor();
    for (;;) {
      if (eat('*'))
        e = make_binary('*', e, parse_factor());
      else if (eat('/'))
        e = make_binary('/', e, parse_factor());
      else
        return e;
    }
  }

  // Unary minus binds looser than ^, so -x^2 is -(x^2).
  Expression parse_factor() {
    if (eat('-')) return make_unary(parse_factor());
    return parse_power();
  }

  // Right-associative: the exponent is a factor, so 2^3^2 is 2^(3^2)
  // and 2^-3 works.
  Expression parse_power() {
    Expression base = parse_atom();
    if (eat('^')) return make_binary('^', base, parse_factor());
    return base;
  }

  Expression parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];

    if (c == '(') {
      const std::size_t open = pos_++;
      Expression e = parse_sum();
      if (!eat(')'))
        throw ParseError("unbalanced parenthesis opened here", open);
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
      return parse_number();

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_name();

    throw ParseError("unexpected token '" + std::string(1, c) + "'", pos_);
  }

  Expression parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_ + 1;
      if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-'))
        ++mark;
      if (mark < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[mark]))) {
        pos_ = mark;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }
    }
    return make_literal(std::strtod(src_.substr(start, pos_ - start).c_str(),
                                    nullptr));
  }

  Expression parse_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "x") return make_variable();
    if (!known_function(name))
      throw ParseError("unknown function '" + name + "'", start);
    skip_ws();
    if (!eat('('))
      throw ParseError("expected '(' after '" + name + "'", pos_);
    Expression arg = parse_sum();
    if (!eat(')')) throw ParseError("unbalanced parenthesis in call", pos_);
    return make_call(name, std::move(arg));
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

double call_eval(const std::string& func, double v) {
  if (func == "exp") return std::exp(v);
  if (func == "log") return std::log(v);
  if (func == "sqrt") return std::sqrt(v);
  if (func == "sin") return std::sin(v);
  if (func == "cos") return std::cos(v);
  if (func == "tan") return std::tan(v);
  if (func == "sinh") return std::sinh(v);
  if (func == "cosh") return std::cosh(v);
  if (func == "tanh") return std::tanh(v);
  if (func == "erf") return std::erf(v);
  return std::fabs(v);  // abs, the only remaining name the parser admits
}

}  // namespace

Expression parse(const std::string& src) { return Parser(src).run(); }

double eval(const Expression& e, double x) {
  switch (e->kind) {
    case ExprNode::Kind::Literal:
      return e->literal;
    case ExprNode::Kind::Variable:
      return x;
    case ExprNode::Kind::Unary:
      return -eval(e->lhs, x);
    case ExprNode::Kind::Call:
      return call_eval(e->func, eval(e->lhs, x));
    case ExprNode::Kind::Binary:
      break;
  }
  const double a = eval(e->lhs, x);
  const double b = eval(e->rhs, x);
  switch (e->op) {
    case '+':
      return a + b;
    case '-':
      return a - b;
    case '*':
      return a * b;
    case '/':
      return a / b;
    default:
      return std::pow(a, b);
  }
}

std::string print(const Expression& e) {
  switch (e->kind) {
    case ExprNode::Kind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", e->literal);
      // a bare leading '-' would fuse with the surrounding operator on
      // reparse; wrap so the printed form is a parse fixed point
      if (buf[0] == '-') return "(" + std::string(buf) + ")";
      return buf;
    }
    case ExprNode::Kind::Variable:
      return "x";
    case ExprNode::Kind::Unary:
      return "(-" + print(e->lhs) + ")";
    case ExprNode::Kind::Call:
      return e->func + "(" + print(e->lhs) + ")";
    case ExprNode::Kind::Binary:
      break;
  }
  return "(" + print(e->lhs) + std::string(1, e->op) + print(e->rhs) + ")";
}

}  // namespace desinc

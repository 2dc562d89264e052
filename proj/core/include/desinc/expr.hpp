#pragma once

#include <memory>
#include <string>

namespace desinc {

// Immutable arithmetic expression over one variable x.
struct ExprNode;
using Expression = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Literal, Variable, Unary, Binary, Call };

  Kind kind = Kind::Literal;
  double literal = 0.0;      // Literal
  char op = 0;               // Binary: one of + - * / ^
  std::string func;          // Call
  Expression lhs;            // Unary and Call operand; Binary left
  Expression rhs;            // Binary right
};

// Recursive-descent parse with the usual precedence: ^ binds tightest
// and associates right, then unary minus, then * /, then + -.
// Functions: exp log sqrt sin cos tan sinh cosh tanh erf abs.
// Failures throw ParseError carrying the byte offset.
Expression parse(const std::string& src);

// Pure IEEE evaluation; log/sqrt of a negative yield NaN rather than
// throwing, so quadrature can flag the offending node itself.
double eval(const Expression& e, double x);

// Fully parenthesized form with %.17g literals; a negative literal prints
// wrapped, as (-2.5). The output is a parse fixed point: parse(print(e))
// reprints to the same string and evaluates identically. Parser-produced
// trees (whose literals are never negative) round-trip node for node.
std::string print(const Expression& e);

}  // namespace desinc

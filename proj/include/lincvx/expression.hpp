#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lincvx {

// Arithmetic expression tree over the real coordinates x1, y1, ..., x4, y4
// and named parameters. Parsed from infix text such as
//   "max(x1^2 + y1^2 - 1, 0.55 - (x1 - 0.6)^2 - y1^2)".
//
// Supported: + - * / ^, unary minus, parentheses, numeric literals, and the
// functions sqrt abs exp log sin cos min max pow.
class Expression {
 public:
  static Expression parse(const std::string& text, const std::map<std::string, double>& params);

  // `reals` is the interleaved (x1, y1, ..., xn, yn) coordinate vector.
  double evaluate(std::span<const double> reals) const;

  // Highest coordinate index referenced, as a complex dimension (0 if none).
  std::size_t min_dimension() const { return min_dim_; }
  const std::string& text() const { return text_; }

 private:
  enum class Op { constant, variable, neg, add, sub, mul, div, pow, sqrt, abs, exp, log, sin, cos, min, max };
  struct Node {
    Op op = Op::constant;
    double value = 0.0;
    std::size_t var = 0;
    int lhs = -1;
    int rhs = -1;
  };
  friend class ExpressionParser;

  double eval_node(int idx, std::span<const double> reals) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t min_dim_ = 0;
  std::string text_;
};

}  // namespace lincvx

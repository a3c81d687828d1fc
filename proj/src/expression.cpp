#include "lincvx/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "lincvx/error.hpp"

namespace lincvx {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::map<std::string, double>& params, Expression& out)
      : text_(text), params_(params), out_(out) {}

  int parse() {
    int root = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::spec_parse, "expression: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int add(Expression::Node n) {
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int binary(Op op, int lhs, int rhs) { return add({op, 0.0, 0, lhs, rhs}); }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return binary(Op::neg, parse_unary(), -1);
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  // Right-associative; binds tighter than unary minus on its left: -x^2 = -(x^2).
  int parse_power() {
    int base = parse_primary();
    if (accept('^')) return binary(Op::pow, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      int inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  int parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return add({Op::constant, v, 0, -1, -1});
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);

    if (accept('(')) return parse_call(name);

    if (name.size() == 2 && (name[0] == 'x' || name[0] == 'y') && name[1] >= '1' && name[1] <= '4') {
      const std::size_t j = static_cast<std::size_t>(name[1] - '1');
      out_.min_dim_ = std::max(out_.min_dim_, j + 1);
      return add({Op::variable, 0.0, 2 * j + (name[0] == 'y' ? 1 : 0), -1, -1});
    }
    if (name == "pi") return add({Op::constant, M_PI, 0, -1, -1});
    auto it = params_.find(name);
    if (it == params_.end()) fail("unknown identifier '" + name + "'");
    return add({Op::constant, it->second, 0, -1, -1});
  }

  int parse_call(const std::string& name) {
    static const std::map<std::string, Op> unary = {{"sqrt", Op::sqrt}, {"abs", Op::abs}, {"exp", Op::exp},
                                                    {"log", Op::log},   {"sin", Op::sin}, {"cos", Op::cos}};
    static const std::map<std::string, Op> binary_fns = {{"min", Op::min}, {"max", Op::max}, {"pow", Op::pow}};
    if (auto it = unary.find(name); it != unary.end()) {
      int arg = parse_sum();
      expect(')');
      return binary(it->second, arg, -1);
    }
    if (auto it = binary_fns.find(name); it != binary_fns.end()) {
      int a = parse_sum();
      expect(',');
      int b = parse_sum();
      expect(')');
      return binary(it->second, a, b);
    }
    fail("unknown function '" + name + "'");
  }

  const std::string& text_;
  const std::map<std::string, double>& params_;
  Expression& out_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text, const std::map<std::string, double>& params) {
  Expression e;
  e.text_ = text;
  ExpressionParser parser(text, params, e);
  e.root_ = parser.parse();
  return e;
}

double Expression::evaluate(std::span<const double> reals) const {
  if (reals.size() < 2 * min_dim_) {
    throw Error(ErrorCode::wrong_dimension, "expression references coordinates beyond the point dimension");
  }
  return eval_node(root_, reals);
}

double Expression::eval_node(int idx, std::span<const double> reals) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return reals[n.var];
    case Op::neg: return -eval_node(n.lhs, reals);
    case Op::add: return eval_node(n.lhs, reals) + eval_node(n.rhs, reals);
    case Op::sub: return eval_node(n.lhs, reals) - eval_node(n.rhs, reals);
    case Op::mul: return eval_node(n.lhs, reals) * eval_node(n.rhs, reals);
    case Op::div: return eval_node(n.lhs, reals) / eval_node(n.rhs, reals);
    case Op::pow: {
      const double b = eval_node(n.lhs, reals);
      const double e = eval_node(n.rhs, reals);
      if (e == 2.0) return b * b;
      return std::pow(b, e);
    }
    case Op::sqrt: return std::sqrt(eval_node(n.lhs, reals));
    case Op::abs: return std::abs(eval_node(n.lhs, reals));
    case Op::exp: return std::exp(eval_node(n.lhs, reals));
    case Op::log: return std::log(eval_node(n.lhs, reals));
    case Op::sin: return std::sin(eval_node(n.lhs, reals));
    case Op::cos: return std::cos(eval_node(n.lhs, reals));
    case Op::min: return std::min(eval_node(n.lhs, reals), eval_node(n.rhs, reals));
    case Op::max: return std::max(eval_node(n.lhs, reals), eval_node(n.rhs, reals));
  }
  return 0.0;
}

}  // namespace lincvx

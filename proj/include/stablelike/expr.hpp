#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace stablelike {

// Expression AST over variables x1..xd. The grammar is limited to continuous
// primitives: numbers, + - *, unary minus, parentheses, and the functions
// sin, cos, exp, abs, min, max. Division is rejected at parse time.
class Expr {
 public:
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Call };

  using Ptr = std::shared_ptr<const Expr>;

  Kind kind;
  double number = 0.0;
  int var_index = 0;  // 0-based
  std::string func;
  std::vector<Ptr> args;

  double eval(const Eigen::VectorXd& x) const;

  static Ptr make_number(double v);
  static Ptr make_var(int index);
  static Ptr make_unary(Kind k, Ptr a);
  static Ptr make_binary(Kind k, Ptr a, Ptr b);
  static Ptr make_call(std::string name, std::vector<Ptr> args);
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Parses an entry expression in variables x1..x<dim>. Throws ParseError with
// the offending position on syntax errors, unknown identifiers, or division.
Expr::Ptr parse_expression(const std::string& text, int dim);

std::string to_string(const Expr& e);
inline std::string to_string(const Expr::Ptr& e) { return to_string(*e); }

bool ast_equal(const Expr& a, const Expr& b);
inline bool ast_equal(const Expr::Ptr& a, const Expr::Ptr& b) {
  return ast_equal(*a, *b);
}

// x -> x/lambda substitution applied to every variable node.
Expr::Ptr substitute_scaled(const Expr::Ptr& e, double lambda);

}  // namespace stablelike

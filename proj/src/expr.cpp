#include "stablelike/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace stablelike {

double Expr::eval(const Eigen::VectorXd& x) const {
  switch (kind) {
    case Kind::Number:
      return number;
    case Kind::Var:
      return x[var_index];
    case Kind::Neg:
      return -args[0]->eval(x);
    case Kind::Add:
      return args[0]->eval(x) + args[1]->eval(x);
    case Kind::Sub:
      return args[0]->eval(x) - args[1]->eval(x);
    case Kind::Mul:
      return args[0]->eval(x) * args[1]->eval(x);
    case Kind::Call: {
      if (func == "sin") return std::sin(args[0]->eval(x));
      if (func == "cos") return std::cos(args[0]->eval(x));
      if (func == "exp") return std::exp(args[0]->eval(x));
      if (func == "abs") return std::abs(args[0]->eval(x));
      if (func == "min")
        return std::min(args[0]->eval(x), args[1]->eval(x));
      return std::max(args[0]->eval(x), args[1]->eval(x));  // max
    }
  }
  return 0.0;
}

Expr::Ptr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->number = v;
  return e;
}

Expr::Ptr Expr::make_var(int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var_index = index;
  return e;
}

Expr::Ptr Expr::make_unary(Kind k, Ptr a) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a)};
  return e;
}

Expr::Ptr Expr::make_binary(Kind k, Ptr a, Ptr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a), std::move(b)};
  return e;
}

Expr::Ptr Expr::make_call(std::string name, std::vector<Ptr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Call;
  e->func = std::move(name);
  e->args = std::move(args);
  return e;
}

namespace {

struct Parser {
  const std::string& text;
  int dim;
  std::size_t pos = 0;

  Parser(const std::string& t, int d) : text(t), dim(d) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  Expr::Ptr parse() {
    auto e = expression();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return e;
  }

  Expr::Ptr expression() {
    auto lhs = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos;
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, term());
      } else if (c == '-') {
        ++pos;
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr::Ptr term() {
    auto lhs = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos;
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, factor());
      } else if (c == '/') {
        fail("division not permitted (entries must stay continuous and "
             "boundable)");
      } else {
        return lhs;
      }
    }
  }

  Expr::Ptr factor() {
    const char c = peek();
    if (c == '-') {
      ++pos;
      return Expr::make_unary(Expr::Kind::Neg, factor());
    }
    if (c == '+') {
      ++pos;
      return factor();
    }
    if (c == '(') {
      ++pos;
      auto e = expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    fail("expected a number, variable, function, or '('");
  }

  Expr::Ptr number() {
    skip_ws();
    const std::size_t start = pos;
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(text.substr(start), &consumed);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos = start + consumed;
    return Expr::make_number(v);
  }

  Expr::Ptr identifier() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    const std::string name = text.substr(start, pos - start);
    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits) {
        const int idx = std::stoi(name.substr(1));
        if (idx < 1 || idx > dim) {
          pos = start;
          fail("variable '" + name + "' out of range for dimension " +
               std::to_string(dim));
        }
        return Expr::make_var(idx - 1);
      }
    }
    if (name == "sin" || name == "cos" || name == "exp" || name == "abs" ||
        name == "min" || name == "max") {
      if (!consume('(')) fail("expected '(' after function name");
      std::vector<Expr::Ptr> args;
      args.push_back(expression());
      const int arity = (name == "min" || name == "max") ? 2 : 1;
      for (int i = 1; i < arity; ++i) {
        if (!consume(',')) fail("function '" + name + "' expects 2 arguments");
        args.push_back(expression());
      }
      if (!consume(')')) fail("expected ')'");
      return Expr::make_call(name, std::move(args));
    }
    pos = start;
    fail("unknown identifier '" + name + "'");
  }
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

void print(const Expr& e, std::ostringstream& out, int parent_prec) {
  const int prec = precedence(e.kind);
  const bool paren = prec < parent_prec;
  if (paren) out << '(';
  switch (e.kind) {
    case Expr::Kind::Number: {
      std::ostringstream num;
      num.precision(17);
      num << e.number;
      out << num.str();
      break;
    }
    case Expr::Kind::Var:
      out << 'x' << (e.var_index + 1);
      break;
    case Expr::Kind::Neg:
      out << '-';
      print(*e.args[0], out, prec + 1);
      break;
    case Expr::Kind::Add:
      print(*e.args[0], out, prec);
      out << " + ";
      print(*e.args[1], out, prec + 1);
      break;
    case Expr::Kind::Sub:
      print(*e.args[0], out, prec);
      out << " - ";
      print(*e.args[1], out, prec + 1);
      break;
    case Expr::Kind::Mul:
      print(*e.args[0], out, prec);
      out << "*";
      print(*e.args[1], out, prec + 1);
      break;
    case Expr::Kind::Call:
      out << e.func << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out << ", ";
        print(*e.args[i], out, 0);
      }
      out << ')';
      break;
  }
  if (paren) out << ')';
}

}  // namespace

Expr::Ptr parse_expression(const std::string& text, int dim) {
  if (text.empty()) throw ParseError("empty expression", 0);
  Parser p(text, dim);
  return p.parse();
}

std::string to_string(const Expr& e) {
  std::ostringstream out;
  print(e, out, 0);
  return out.str();
}

bool ast_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::Var:
      return a.var_index == b.var_index;
    case Expr::Kind::Call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!ast_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

Expr::Ptr substitute_scaled(const Expr::Ptr& e, double lambda) {
  switch (e->kind) {
    case Expr::Kind::Var:
      return Expr::make_binary(Expr::Kind::Mul,
                               Expr::make_number(1.0 / lambda),
                               Expr::make_var(e->var_index));
    case Expr::Kind::Number:
      return e;
    default: {
      auto copy = std::make_shared<Expr>(*e);
      for (auto& a : copy->args) a = substitute_scaled(a, lambda);
      return copy;
    }
  }
}

}  // namespace stablelike

#include "symsys/expression.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "dsl_parser.hpp"
#include "symsys/errors.hpp"

namespace symsys {

EvaluationError::EvaluationError(const std::string& reason, double x, int row, int col)
    : NumericalError([&] {
        std::string msg = reason + " at x=" + std::to_string(x);
        if (row >= 0) msg += " (entry " + std::to_string(row) + "," + std::to_string(col) + ")";
        return msg;
      }()),
      reason_(reason),
      x_(x),
      row_(row),
      col_(col) {}

struct Expression::Node {
  Kind kind = Kind::Constant;
  std::complex<double> value{0.0, 0.0};
  Function fn = Function::Sin;
  int exponent = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

bool is_const(const Expression& e, std::complex<double> v) {
  return e.kind() == Expression::Kind::Constant && e.constant_value() == v;
}

std::complex<double> ipow(std::complex<double> base, int n) {
  std::complex<double> result{1.0, 0.0};
  const bool invert = n < 0;
  unsigned m = invert ? static_cast<unsigned>(-(n + 1)) + 1u : static_cast<unsigned>(n);
  while (m) {
    if (m & 1u) result *= base;
    base *= base;
    m >>= 1u;
  }
  return invert ? 1.0 / result : result;
}

std::complex<double> apply(Function fn, std::complex<double> z, double x) {
  switch (fn) {
    case Function::Sin: return std::sin(z);
    case Function::Cos: return std::cos(z);
    case Function::Exp: return std::exp(z);
    case Function::Log:
      if (z.imag() == 0.0 && z.real() <= 0.0) throw EvaluationError("log of a nonpositive value", x);
      return std::log(z);
    case Function::Sqrt: return std::sqrt(z);
    case Function::Abs: return std::abs(z);
    case Function::Tanh: return std::tanh(z);
    case Function::Sign: {
      const double r = std::abs(z);
      return r == 0.0 ? std::complex<double>{} : z / r;
    }
  }
  return {};
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expression::Expression() : node_(std::make_shared<Node>()) {}
Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(std::complex<double> value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expression(std::move(n));
}

Expression Expression::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return Expression(std::move(n));
}

Expression Expression::call(Function fn, Expression arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->a = arg.node_;
  return Expression(std::move(n));
}

Expression Expression::power(Expression base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.kind() == Kind::Constant && (exponent > 0 || base.constant_value() != 0.0))
    return constant(ipow(base.constant_value(), exponent));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->a = base.node_;
  return Expression(std::move(n));
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == Expression::Kind::Constant && b.kind() == Expression::Kind::Constant)
    return Expression::constant(a.constant_value() + b.constant_value());
  return Expression::make_binary(Expression::Kind::Add, a, b);
}

Expression operator-(const Expression& a, const Expression& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.kind() == Expression::Kind::Constant && b.kind() == Expression::Kind::Constant)
    return Expression::constant(a.constant_value() - b.constant_value());
  return Expression::make_binary(Expression::Kind::Sub, a, b);
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression();
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.kind() == Expression::Kind::Constant && b.kind() == Expression::Kind::Constant)
    return Expression::constant(a.constant_value() * b.constant_value());
  return Expression::make_binary(Expression::Kind::Mul, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
  if (is_const(b, 1.0)) return a;
  if (a.kind() == Expression::Kind::Constant && b.kind() == Expression::Kind::Constant &&
      b.constant_value() != 0.0)
    return Expression::constant(a.constant_value() / b.constant_value());
  return Expression::make_binary(Expression::Kind::Div, a, b);
}

Expression operator-(const Expression& a) {
  if (a.kind() == Expression::Kind::Constant) return Expression::constant(-a.constant_value());
  if (a.kind() == Expression::Kind::Neg) return Expression(a.node_->a);
  auto n = std::make_shared<Expression::Node>();
  n->kind = Expression::Kind::Neg;
  n->a = a.node_;
  return Expression(std::move(n));
}

Expression Expression::make_binary(Kind kind, const Expression& a, const Expression& b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = a.node_;
  n->b = b.node_;
  return Expression(std::move(n));
}

Expression::Kind Expression::kind() const { return node_->kind; }

bool Expression::is_zero() const {
  return node_->kind == Kind::Constant && node_->value == std::complex<double>{};
}

std::complex<double> Expression::constant_value() const { return node_->value; }

bool Expression::is_constant() const {
  switch (node_->kind) {
    case Kind::Constant: return true;
    case Kind::Variable: return false;
    case Kind::Neg:
    case Kind::Pow:
    case Kind::Call: return Expression(node_->a).is_constant();
    default: return Expression(node_->a).is_constant() && Expression(node_->b).is_constant();
  }
}

namespace {

std::complex<double> eval_node(const Expression::Node& n, double x);

}  // namespace

std::complex<double> Expression::evaluate(double x) const {
  const std::complex<double> v = eval_node(*node_, x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw EvaluationError("non-finite value", x);
  return v;
}

namespace {

std::complex<double> eval_node(const Expression::Node& n, double x) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::Constant: return n.value;
    case K::Variable: return {x, 0.0};
    case K::Neg: return -eval_node(*n.a, x);
    case K::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case K::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case K::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case K::Div: {
      const std::complex<double> den = eval_node(*n.b, x);
      if (den == std::complex<double>{}) throw EvaluationError("division by zero", x);
      return eval_node(*n.a, x) / den;
    }
    case K::Pow: {
      const std::complex<double> base = eval_node(*n.a, x);
      if (n.exponent < 0 && base == std::complex<double>{}) throw EvaluationError("division by zero", x);
      return ipow(base, n.exponent);
    }
    case K::Call: return apply(n.fn, eval_node(*n.a, x), x);
  }
  return {};
}

}  // namespace

Expression Expression::derivative() const {
  const Node& n = *node_;
  const Expression a = n.a ? Expression(n.a) : Expression();
  const Expression b = n.b ? Expression(n.b) : Expression();
  switch (n.kind) {
    case Kind::Constant: return Expression();
    case Kind::Variable: return constant(1.0);
    case Kind::Neg: return -a.derivative();
    case Kind::Add: return a.derivative() + b.derivative();
    case Kind::Sub: return a.derivative() - b.derivative();
    case Kind::Mul: return a.derivative() * b + a * b.derivative();
    case Kind::Div: {
      const Expression da = a.derivative();
      const Expression db = b.derivative();
      if (db.is_zero()) return da / b;
      return (da * b - a * db) / power(b, 2);
    }
    case Kind::Pow:
      return constant(static_cast<double>(n.exponent)) * power(a, n.exponent - 1) * a.derivative();
    case Kind::Call: {
      const Expression da = a.derivative();
      if (da.is_zero()) return Expression();
      switch (n.fn) {
        case Function::Sin: return call(Function::Cos, a) * da;
        case Function::Cos: return -(call(Function::Sin, a) * da);
        case Function::Exp: return *this * da;
        case Function::Log: return da / a;
        case Function::Sqrt: return da / (constant(2.0) * *this);
        case Function::Abs: return call(Function::Sign, a) * da;
        case Function::Tanh: return (constant(1.0) - power(*this, 2)) * da;
        case Function::Sign: return Expression();
      }
    }
  }
  return Expression();
}

bool Expression::has_kink() const {
  const Node& n = *node_;
  if (n.kind == Kind::Call && (n.fn == Function::Abs || n.fn == Function::Sign)) return true;
  if (n.a && Expression(n.a).has_kink()) return true;
  if (n.b && Expression(n.b).has_kink()) return true;
  return false;
}

const char* function_name(Function fn) {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
    case Function::Tanh: return "tanh";
    case Function::Sign: return "sign";
  }
  return "?";
}

namespace {

// Binding strength used for parenthesization: sums 1, products 2, negation 3,
// powers 4, atoms 5.
int precedence(const Expression::Node& n) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul:
    case K::Div: return 2;
    case K::Neg: return 3;
    case K::Pow: return 4;
    case K::Constant: {
      const auto v = n.value;
      if (v.imag() == 0.0) return std::signbit(v.real()) ? 3 : 5;
      if (v.real() == 0.0) return std::signbit(v.imag()) ? 3 : 5;
      return 5;
    }
    default: return 5;
  }
}

std::string print_node(const Expression::Node& n);

std::string wrap(const Expression::Node& child, int min_prec) {
  std::string s = print_node(child);
  return precedence(child) < min_prec ? "(" + s + ")" : s;
}

std::string print_node(const Expression::Node& n) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::Constant: {
      const auto v = n.value;
      if (v.imag() == 0.0) return format_real(v.real());
      if (v.real() == 0.0) return format_real(v.imag()) + "i";
      return "(" + format_real(v.real()) + (std::signbit(v.imag()) ? "-" : "+") +
             format_real(std::abs(v.imag())) + "i)";
    }
    case K::Variable: return "x";
    case K::Neg: return "-" + wrap(*n.a, 4);
    case K::Add: return wrap(*n.a, 1) + "+" + wrap(*n.b, 2);
    case K::Sub: return wrap(*n.a, 1) + "-" + wrap(*n.b, 2);
    case K::Mul: return wrap(*n.a, 2) + "*" + wrap(*n.b, 3);
    case K::Div: return wrap(*n.a, 2) + "/" + wrap(*n.b, 3);
    case K::Pow: {
      const std::string e = n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent);
      return wrap(*n.a, 5) + "^" + e;
    }
    case K::Call: return std::string(function_name(n.fn)) + "(" + print_node(*n.a) + ")";
  }
  return "";
}

}  // namespace

std::string Expression::to_string() const { return print_node(*node_); }

Expression parse_expression(std::string_view text) {
  detail::DslParser p(text);
  Expression e = p.expression();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return e;
}

std::complex<double> parse_complex(std::string_view text) {
  const Expression e = parse_expression(text);
  if (!e.is_constant()) throw InputError("complex literal must not depend on x: " + std::string(text));
  return e.evaluate(0.0);
}

}  // namespace symsys

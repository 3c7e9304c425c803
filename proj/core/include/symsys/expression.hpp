#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace symsys {

enum class Function { Sin, Cos, Exp, Log, Sqrt, Abs, Tanh, Sign };

/// Immutable scalar expression in one real variable x with complex values.
///
/// Supported: real/imaginary literals, `x`, `i`, `pi`, + - * /, integer powers `^n`,
/// unary minus, and sin cos exp log sqrt abs tanh (plus `sign`, which appears in
/// derivatives of abs). Nodes are shared, so copies are cheap.
class Expression {
 public:
  enum class Kind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Expression();  // the constant 0

  static Expression constant(std::complex<double> value);
  static Expression variable();
  static Expression call(Function fn, Expression arg);
  static Expression power(Expression base, int exponent);

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

  Kind kind() const;
  bool is_constant() const;  // contains no x
  bool is_zero() const;      // literally the constant 0
  std::complex<double> constant_value() const;  // only for Kind::Constant

  /// Throws EvaluationError on a singularity (division by zero, log of a nonpositive
  /// real, non-finite result).
  std::complex<double> evaluate(double x) const;

  Expression derivative() const;

  /// True when the tree contains abs(), i.e. the derivative may have a kink.
  bool has_kink() const;

  /// Parseable text; constants are printed with round-trip precision.
  std::string to_string() const;

  struct Node;  // opaque

 private:
  explicit Expression(std::shared_ptr<const Node> node);
  static Expression make_binary(Kind kind, const Expression& a, const Expression& b);
  std::shared_ptr<const Node> node_;
};

/// Parse a single scalar expression. Throws SyntaxError.
Expression parse_expression(std::string_view text);

/// Parse a complex literal such as "1+2i", "-0.5i" or "2": any expression without x.
std::complex<double> parse_complex(std::string_view text);

const char* function_name(Function fn);

}  // namespace symsys

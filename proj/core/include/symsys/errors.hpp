#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symsys {

/// Malformed or inconsistent user input (syntax, dimensions, domains).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DSL syntax error with a 1-based source position.
class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at line " + std::to_string(line) + ", column " +
                   std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A numerical procedure could not complete (step underflow, overflow, singular matrix).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient could not be evaluated at a point (log of a nonpositive value, 1/0, ...).
/// Carries the abscissa and, once known, the matrix entry.
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& reason, double x, int row = -1, int col = -1);

  double x() const noexcept { return x_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
  double x_;
  int row_;
  int col_;
};

/// Point outside the domain of a coefficient field.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace symsys

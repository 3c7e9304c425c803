#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/linalg.hpp"

namespace symsys {

/// Matrix-valued function of x used for the coefficients of a system.
///
/// Either wraps a symbolic CoefficientField (derivative available symbolically) or a
/// numeric callable, e.g. a propagated gauge transformation. Evaluation takes an
/// optional `locator`: the piece of a piecewise coefficient is chosen by the locator
/// rather than by x, so one-sided limits at piece boundaries are available.
class MatrixFunction {
 public:
  using Eval = std::function<CMatrix(double x, double locator)>;

  MatrixFunction() = default;
  MatrixFunction(CoefficientField field);  // NOLINT(google-explicit-constructor)

  static MatrixFunction numeric(int rows, int cols, Interval domain, std::vector<double> breakpoints, Eval value,
                                Eval derivative = {});

  int rows() const;
  int cols() const;
  Interval domain() const;
  std::vector<double> breakpoints() const;

  CMatrix operator()(double x) const { return value(x, x); }
  CMatrix value(double x, double locator) const;

  bool has_derivative() const;
  CMatrix derivative(double x) const { return derivative(x, x); }
  CMatrix derivative(double x, double locator) const;

  /// The underlying symbolic field, or nullptr for numeric functions.
  const CoefficientField* symbolic() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace symsys

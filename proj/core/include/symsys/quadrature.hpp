#pragma once

#include <functional>

#include "symsys/linalg.hpp"

namespace symsys {

struct QuadratureResult {
  CMatrix value;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive 7/15-point Gauss-Kronrod on a finite [a, b] for a matrix-valued integrand.
/// Stops when the summed error estimate is below max(abstol, reltol * |value|).
QuadratureResult integrate_matrix(const std::function<CMatrix(double)>& f, double a, double b,
                                  double reltol = 1e-10, double abstol = 0.0, int max_intervals = 2000);

/// Scalar convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a, double b, double reltol = 1e-10,
                      double abstol = 0.0, double* error = nullptr);

}  // namespace symsys

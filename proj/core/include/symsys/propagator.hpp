#pragma once

#include <memory>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/linalg.hpp"
#include "symsys/system.hpp"

namespace symsys {

/// Result of carrying a solution matrix Y across [a, b] (either orientation).
/// The true solution at b is exp(log_scale) * values; `gram` is the unsigned
/// integral of Y* H Y over the segment, scaled by exp(2 log_scale).
struct SegmentResult {
  CMatrix values;
  CMatrix gram;
  double log_scale = 0.0;
  int steps = 0;
};

/// State after one accepted step; same scaling convention as SegmentResult.
struct StepRecord {
  double x = 0.0;
  CMatrix values;
  CMatrix gram;
  double log_scale = 0.0;
};

/// Integrate J Y' + B Y = lambda H Y from Y(a) = ya to b with an embedded 8(5,3)
/// Runge-Kutta pair, jointly with the Gram integral. Coefficient breakpoints are hit
/// exactly. Columns are rescaled when they grow past 1e50. Accepted steps are appended
/// to `trace` when given. Throws NumericalError on step-size underflow or singular J.
SegmentResult integrate_segment(const SymmetricSystem& system, cd lambda, double a, const CMatrix& ya, double b,
                                double reltol, std::vector<StepRecord>* trace = nullptr);

/// Phi(x, lambda) with Phi(x0) = I, sampled on a grid containing x0.
class FundamentalSolution {
 public:
  cd lambda() const { return lambda_; }
  double x0() const { return system_->x0(); }
  double reltol() const { return reltol_; }
  const SymmetricSystem& system() const { return *system_; }

  /// Ascending, contains x0 and every requested target.
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<CMatrix>& values() const { return values_; }
  /// Running Gram: the oriented integral of Phi* H Phi from x0 to each grid point, so
  /// gram(x2) - gram(x1) = integral over [x1, x2] for any x1 <= x2.
  const std::vector<CMatrix>& gram() const { return gram_; }

  /// Phi and the running Gram anywhere in [grid().front(), grid().back()]; points between
  /// accepted steps are filled in by a short re-integration from the previous step.
  CMatrix value_at(double x) const;
  CMatrix gram_at(double x) const;

  /// Derivative Phi'(x) = J(x)^{-1} (lambda H(x) - B(x)) Phi(x).
  CMatrix derivative_at(double x) const;

  int steps() const { return steps_; }

 private:
  friend FundamentalSolution propagate(const SymmetricSystem&, cd, const std::vector<double>&, double);

  std::shared_ptr<const SymmetricSystem> system_;
  cd lambda_;
  double reltol_ = 1e-10;
  std::vector<double> grid_;
  std::vector<CMatrix> values_;
  std::vector<CMatrix> gram_;
  std::vector<StepRecord> dense_;  // ascending x, true scale, oriented running Gram
  int steps_ = 0;

  StepRecord state_at(double x) const;
};

/// Fundamental solution at lambda, integrated outward from x0 to every target.
/// Throws InputError for targets outside the interval.
FundamentalSolution propagate(const SymmetricSystem& system, cd lambda, const std::vector<double>& targets,
                              double reltol = 1e-10);

/// Integral of Phi* H Phi over the compact interval I0. The running-Gram difference is
/// checked against a direct re-integration at a tenth of the tolerance and replaced by
/// it when they disagree by more than reltol * |G|. Throws InputError outside the range.
CMatrix gram_matrix(const FundamentalSolution& fs, const Interval& i0);

/// c* G(I0) c, the squared H-norm of the solution Phi c over I0.
double h_norm_sq(const FundamentalSolution& fs, const CVector& c, const Interval& i0);

}  // namespace symsys

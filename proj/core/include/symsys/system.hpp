#pragma once

#include <optional>
#include <span>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/linalg.hpp"
#include "symsys/matrix_function.hpp"

namespace symsys {

struct GridOptions {
  int points_per_piece = 512;
  /// Infinite pieces are sampled on a window of this length from their finite end
  /// (or on [-window, window] for the real line).
  double infinite_window = 64.0;
};

/// Chebyshev (first kind) points on every piece of `domain` cut at `breakpoints`.
/// Endpoints are never included.
std::vector<double> chebyshev_grid(const Interval& domain, const std::vector<double>& breakpoints,
                                   const GridOptions& options = {});

/// The system J f' + B f = lambda H f on an interval, with J = -J*, det J != 0,
/// B - B* = J', H = H* >= 0.
class SymmetricSystem {
 public:
  /// `x0` defaults to the midpoint of a finite interval, the closed finite end of a
  /// half-line or half-closed interval, and 0 on the real line. J must carry a derivative.
  SymmetricSystem(Interval interval, MatrixFunction J, MatrixFunction B, MatrixFunction H,
                  std::optional<double> x0 = std::nullopt);

  int n() const { return n_; }
  const Interval& interval() const { return interval_; }
  double x0() const { return x0_; }
  const MatrixFunction& J() const { return J_; }
  const MatrixFunction& B() const { return B_; }
  const MatrixFunction& H() const { return H_; }

  /// Interior piece boundaries of J, B and H (ascending, unique).
  std::vector<double> breakpoints() const;
  std::vector<double> default_grid(const GridOptions& options = {}) const;

  /// True when J, B and H are all symbolic fields.
  bool is_symbolic() const;

  SymmetricSystem with_base_point(double x0) const;
  SymmetricSystem with_interval(Interval interval) const;

  static double default_base_point(const Interval& interval);

 private:
  int n_ = 0;
  Interval interval_;
  MatrixFunction J_;
  MatrixFunction B_;
  MatrixFunction H_;
  double x0_ = 0.0;
};

struct ValidationPoint {
  double x = 0.0;
  double skew_residual = 0.0;       // |J + J*|
  double symmetry_residual = 0.0;   // |B - B* - J'|
  double h_hermitian_residual = 0.0;  // |H - H*|
  double h_min_eig = 0.0;
  double j_min_sv = 0.0;
};

struct ValidationReport {
  double tol = 0.0;
  bool pass = false;
  std::vector<ValidationPoint> points;
  double max_skew_residual = 0.0;
  double max_symmetry_residual = 0.0;
  double max_h_hermitian_residual = 0.0;
  double min_h_eig = 0.0;
  double min_j_sv = 0.0;
  std::optional<double> first_failure;
};

ValidationReport validate(const SymmetricSystem& system, std::span<const double> grid, double tol = kDefaultTol);

/// Coefficients of the square system: the base (J, B, H), A >= 0, V Hermitian and the
/// scalar weight q >= 1.
struct SquareSystemSpec {
  SymmetricSystem base;
  CoefficientField A;
  CoefficientField V;
  CoefficientField q;

  /// True when the base is the Sturm-Liouville form J = iI, B = 0 (checked on `grid`).
  bool is_sturm_liouville(std::span<const double> grid, double tol = kDefaultTol) const;
};

/// Throws InputError when A is not Hermitian PSD, V not Hermitian, or q < 1 on `grid`.
void check_square_spec(const SquareSystemSpec& spec, std::span<const double> grid, double tol = kDefaultTol);

/// Spec for the Sturm-Liouville equation -(A^{-1} u')' + V u = H v with base J = iI, B = 0.
SquareSystemSpec sturm_liouville_spec(const CoefficientField& A, const CoefficientField& V,
                                      const CoefficientField& H, const CoefficientField& q, Interval interval);

/// 2n x 2n system J~ = [[0, iI], [iI, 0]], B~ = [[V, 0], [0, -A]], H~ = [[H, 0], [0, 0]].
/// Throws InputError unless A is positive definite on the default grid of `interval`.
SymmetricSystem sl_embed(const CoefficientField& A, const CoefficientField& V, const CoefficientField& H,
                         std::optional<Interval> interval = std::nullopt, double tol = kDefaultTol);

/// 2n x 2n system J~ = [[0, J], [J, 0]], B~ = [[V, B], [B, -A]], H~ = [[H, 0], [0, 0]].
/// Requires a symbolic base.
SymmetricSystem square_system(const SquareSystemSpec& spec, double tol = kDefaultTol);

/// Invertible, differentiable matrix path U(x).
class GaugeTransform {
 public:
  explicit GaugeTransform(MatrixFunction u);
  static GaugeTransform identity(int n);

  const MatrixFunction& matrix() const { return u_; }
  CMatrix value(double x) const { return u_(x); }
  CMatrix derivative(double x) const { return u_.derivative(x); }

  /// x -> U(x)^{-1}, with derivative -U^{-1} U' U^{-1}.
  GaugeTransform inverse() const;

 private:
  MatrixFunction u_;
};

/// (U*JU, U*JU' + U*BU, U*HU). Throws NumericalError if U is singular at a point of
/// `check_grid` (the system's default grid when empty).
SymmetricSystem gauge_apply(const SymmetricSystem& system, const GaugeTransform& u,
                            std::span<const double> check_grid = {}, double tol = kDefaultTol);

struct CanonicalReduction {
  GaugeTransform transform;
  SymmetricSystem system;
};

/// U is the fundamental solution of J y' + B y = 0 with U(x0) = I; the gauged system
/// has B~ = 0 and J~ = J(x0). U is available on the hull of `grid` and x0.
CanonicalReduction canonical_reduce(const SymmetricSystem& system, std::span<const double> grid,
                                    double reltol = 1e-12);

}  // namespace symsys

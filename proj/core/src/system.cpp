#include "symsys/system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symsys/errors.hpp"
#include "symsys/propagator.hpp"

namespace symsys {

namespace {

bool covers(const Interval& outer, const Interval& inner) {
  if (inner.left < outer.left || inner.right > outer.right) return false;
  if (inner.left == outer.left && inner.left_closed && !outer.left_closed) return false;
  if (inner.right == outer.right && inner.right_closed && !outer.right_closed) return false;
  return true;
}

std::vector<double> merged_breaks(std::initializer_list<std::vector<double>> lists, const Interval& iv) {
  std::vector<double> out;
  for (const auto& l : lists) {
    for (double p : l) {
      if (p > iv.left && p < iv.right) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void append_chebyshev(std::vector<double>& out, double a, double b, int count) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = count - 1; k >= 0; --k) {
    out.push_back(mid + half * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count)));
  }
}

std::string where(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::vector<double> chebyshev_grid(const Interval& domain, const std::vector<double>& breakpoints,
                                   const GridOptions& options) {
  std::vector<double> cuts;
  for (double p : breakpoints) {
    if (p > domain.left && p < domain.right) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double w = options.infinite_window;
  double left = domain.left;
  double right = domain.right;
  if (std::isinf(left) && std::isinf(right) && cuts.empty()) {
    left = -w;
    right = w;
  } else {
    if (std::isinf(left)) left = (cuts.empty() ? right : cuts.front()) - w;
    if (std::isinf(right)) right = (cuts.empty() ? left : cuts.back()) + w;
  }
  std::vector<double> edges;
  edges.push_back(left);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(right);
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    append_chebyshev(out, edges[k], edges[k + 1], std::max(1, options.points_per_piece));
  }
  return out;
}

// SymmetricSystem -------------------------------------------------------------

double SymmetricSystem::default_base_point(const Interval& iv) {
  const bool lf = iv.left_finite();
  const bool rf = iv.right_finite();
  if (iv.is_half_closed()) return iv.left;
  if (lf && rf) return 0.5 * (iv.left + iv.right);
  if (lf) return iv.left_closed ? iv.left : iv.left + 1.0;
  if (rf) return iv.right_closed ? iv.right : iv.right - 1.0;
  return 0.0;
}

SymmetricSystem::SymmetricSystem(Interval interval, MatrixFunction J, MatrixFunction B, MatrixFunction H,
                                 std::optional<double> x0)
    : interval_(interval), J_(std::move(J)), B_(std::move(B)), H_(std::move(H)) {
  n_ = J_.rows();
  if (n_ <= 0) throw InputError("system dimension must be positive");
  for (const MatrixFunction* m : {&J_, &B_, &H_}) {
    if (m->rows() != n_ || m->cols() != n_) {
      std::ostringstream os;
      os << "coefficient dimension mismatch: expected " << n_ << "x" << n_ << ", got " << m->rows() << "x"
         << m->cols();
      throw InputError(os.str());
    }
    if (!covers(m->domain(), interval_)) {
      throw InputError("coefficient domain " + m->domain().to_string() + " does not cover the interval " +
                       interval_.to_string());
    }
  }
  if (!J_.has_derivative()) throw InputError("J must be differentiable");
  x0_ = x0 ? *x0 : default_base_point(interval_);
  if (!interval_.contains(x0_)) throw InputError("base point x0 = " + where(x0_) + " is outside " + interval_.to_string());
}

std::vector<double> SymmetricSystem::breakpoints() const {
  return merged_breaks({J_.breakpoints(), B_.breakpoints(), H_.breakpoints()}, interval_);
}

std::vector<double> SymmetricSystem::default_grid(const GridOptions& options) const {
  return chebyshev_grid(interval_, breakpoints(), options);
}

bool SymmetricSystem::is_symbolic() const { return J_.symbolic() && B_.symbolic() && H_.symbolic(); }

SymmetricSystem SymmetricSystem::with_base_point(double x0) const { return {interval_, J_, B_, H_, x0}; }

SymmetricSystem SymmetricSystem::with_interval(Interval interval) const {
  std::optional<double> x0;
  if (interval.contains(x0_) && interval == interval_) x0 = x0_;
  return {interval, J_, B_, H_, x0};
}

// Validation -----------------------------------------------------------------

ValidationReport validate(const SymmetricSystem& system, std::span<const double> grid, double tol) {
  ValidationReport rep;
  rep.tol = tol;
  rep.pass = true;
  rep.min_h_eig = std::numeric_limits<double>::infinity();
  rep.min_j_sv = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    if (!system.interval().contains(x)) {
      throw InputError("validation point " + where(x) + " is outside " + system.interval().to_string());
    }
    const CMatrix j = system.J()(x);
    const CMatrix jp = system.J().derivative(x);
    const CMatrix b = system.B()(x);
    const CMatrix h = system.H()(x);
    ValidationPoint p;
    p.x = x;
    p.skew_residual = operator_norm(j + j.adjoint());
    p.symmetry_residual = operator_norm(b - b.adjoint() - jp);
    p.h_hermitian_residual = operator_norm(h - h.adjoint());
    p.h_min_eig = hermitian_eigenvalues(h)(0);
    p.j_min_sv = min_singular_value(j);
    const bool ok = p.skew_residual <= tol && p.symmetry_residual <= tol && p.h_hermitian_residual <= tol &&
                    p.h_min_eig >= -tol && p.j_min_sv > tol;
    if (!ok && rep.pass) {
      rep.pass = false;
      rep.first_failure = x;
    }
    rep.max_skew_residual = std::max(rep.max_skew_residual, p.skew_residual);
    rep.max_symmetry_residual = std::max(rep.max_symmetry_residual, p.symmetry_residual);
    rep.max_h_hermitian_residual = std::max(rep.max_h_hermitian_residual, p.h_hermitian_residual);
    rep.min_h_eig = std::min(rep.min_h_eig, p.h_min_eig);
    rep.min_j_sv = std::min(rep.min_j_sv, p.j_min_sv);
    rep.points.push_back(p);
  }
  if (grid.empty()) {
    rep.min_h_eig = 0.0;
    rep.min_j_sv = 0.0;
  }
  return rep;
}

// Square systems ---------------------------------------------------------------

bool SquareSystemSpec::is_sturm_liouville(std::span<const double> grid, double tol) const {
  const int n = base.n();
  const CMatrix ii = cd(0.0, 1.0) * CMatrix::Identity(n, n);
  for (double x : grid) {
    if (operator_norm(base.J()(x) - ii) > tol || operator_norm(base.B()(x)) > tol) return false;
  }
  return true;
}

void check_square_spec(const SquareSystemSpec& spec, std::span<const double> grid, double tol) {
  const int n = spec.base.n();
  if (spec.A.rows() != n || spec.A.cols() != n || spec.V.rows() != n || spec.V.cols() != n) {
    throw InputError("A and V must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (spec.q.rows() != 1 || spec.q.cols() != 1) throw InputError("q must be scalar");
  for (double x : grid) {
    const HermitianCheck a = hermitian_psd_check(spec.A.evaluate(x), tol);
    if (!a.psd) throw InputError("A is not Hermitian nonnegative at x = " + where(x));
    if (!hermitian_psd_check(spec.V.evaluate(x), tol).hermitian) {
      throw InputError("V is not Hermitian at x = " + where(x));
    }
    const cd q = spec.q.evaluate(x)(0, 0);
    if (std::abs(q.imag()) > tol || q.real() < 1.0 - tol) throw InputError("q < 1 at x = " + where(x));
  }
}

SquareSystemSpec sturm_liouville_spec(const CoefficientField& A, const CoefficientField& V, const CoefficientField& H,
                                      const CoefficientField& q, Interval interval) {
  const int n = A.rows();
  SymmetricSystem base(interval, CoefficientField::identity(n, cd(0.0, 1.0)), CoefficientField::zero(n, n), H);
  return {std::move(base), A, V, q};
}

SymmetricSystem square_system(const SquareSystemSpec& spec, double tol) {
  const SymmetricSystem& base = spec.base;
  const CoefficientField* J = base.J().symbolic();
  const CoefficientField* B = base.B().symbolic();
  const CoefficientField* H = base.H().symbolic();
  if (!J || !B || !H) throw InputError("square_system needs symbolic J, B and H");
  const std::vector<double> grid = base.default_grid();
  check_square_spec(spec, grid, tol);
  const int n = base.n();
  const CoefficientField z = CoefficientField::zero(n, n);
  const CoefficientField Jt = CoefficientField::block({{z, *J}, {*J, z}});
  const CoefficientField Bt = CoefficientField::block({{spec.V, *B}, {*B, -spec.A}});
  const CoefficientField Ht = CoefficientField::block({{*H, z}, {z, z}});
  return {base.interval(), Jt, Bt, Ht, base.x0()};
}

SymmetricSystem sl_embed(const CoefficientField& A, const CoefficientField& V, const CoefficientField& H,
                         std::optional<Interval> interval, double tol) {
  const Interval iv = interval ? *interval : intersect(intersect(A.domain(), V.domain()), H.domain());
  const int n = A.rows();
  const SquareSystemSpec spec = sturm_liouville_spec(A, V, H, CoefficientField::identity(1), iv);
  for (double x : spec.base.default_grid()) {
    const CMatrix a = A.evaluate(x);
    if (!hermitian_psd_check(a, tol).hermitian || hermitian_eigenvalues(a)(0) <= tol) {
      throw InputError("A is not positive definite at x = " + where(x));
    }
  }
  if (V.rows() != n || H.rows() != n) throw InputError("A, V and H must have equal dimensions");
  return square_system(spec, tol);
}

// Gauge transformations --------------------------------------------------------

GaugeTransform::GaugeTransform(MatrixFunction u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0) throw InputError("gauge transformation must be square");
  if (!u_.has_derivative()) throw InputError("gauge transformation must be differentiable");
}

GaugeTransform GaugeTransform::identity(int n) { return GaugeTransform(CoefficientField::identity(n)); }

GaugeTransform GaugeTransform::inverse() const {
  const MatrixFunction u = u_;
  auto value = [u](double x, double loc) -> CMatrix { return u.value(x, loc).inverse(); };
  auto deriv = [u](double x, double loc) -> CMatrix {
    const CMatrix inv = u.value(x, loc).inverse();
    return -inv * u.derivative(x, loc) * inv;
  };
  return GaugeTransform(MatrixFunction::numeric(u.rows(), u.cols(), u.domain(), u.breakpoints(), value, deriv));
}

SymmetricSystem gauge_apply(const SymmetricSystem& system, const GaugeTransform& gauge, std::span<const double> check_grid,
                            double tol) {
  const MatrixFunction u = gauge.matrix();
  const int n = system.n();
  if (u.rows() != n) throw InputError("gauge transformation dimension does not match the system");
  const Interval iv = system.interval();
  if (!covers(u.domain(), iv)) {
    throw InputError("gauge transformation domain " + u.domain().to_string() + " does not cover " + iv.to_string());
  }
  std::vector<double> fallback;
  if (check_grid.empty()) {
    fallback = system.default_grid();
    check_grid = fallback;
  }
  for (double x : check_grid) {
    const CMatrix ux = u(x);
    if (min_singular_value(ux) <= tol * std::max(1.0, operator_norm(ux))) {
      throw NumericalError("gauge transformation is singular at x = " + where(x));
    }
  }
  const MatrixFunction J = system.J();
  const MatrixFunction B = system.B();
  const MatrixFunction H = system.H();
  auto jt = [u, J](double x, double l) -> CMatrix {
    const CMatrix ux = u.value(x, l);
    return ux.adjoint() * J.value(x, l) * ux;
  };
  auto jtp = [u, J](double x, double l) -> CMatrix {
    const CMatrix ux = u.value(x, l);
    const CMatrix up = u.derivative(x, l);
    const CMatrix jx = J.value(x, l);
    return up.adjoint() * jx * ux + ux.adjoint() * J.derivative(x, l) * ux + ux.adjoint() * jx * up;
  };
  auto bt = [u, J, B](double x, double l) -> CMatrix {
    const CMatrix ux = u.value(x, l);
    return ux.adjoint() * (J.value(x, l) * u.derivative(x, l) + B.value(x, l) * ux);
  };
  auto ht = [u, H](double x, double l) -> CMatrix {
    const CMatrix ux = u.value(x, l);
    return ux.adjoint() * H.value(x, l) * ux;
  };
  const std::vector<double> breaks = merged_breaks({system.breakpoints(), u.breakpoints()}, iv);
  return {iv, MatrixFunction::numeric(n, n, iv, breaks, jt, jtp), MatrixFunction::numeric(n, n, iv, breaks, bt),
          MatrixFunction::numeric(n, n, iv, breaks, ht), system.x0()};
}

CanonicalReduction canonical_reduce(const SymmetricSystem& system, std::span<const double> grid, double reltol) {
  std::vector<double> targets(grid.begin(), grid.end());
  if (targets.empty()) targets = system.default_grid();
  const auto fs = std::make_shared<const FundamentalSolution>(propagate(system, 0.0, targets, reltol));
  const double lo = fs->grid().front();
  const double hi = fs->grid().back();
  const Interval hull = Interval::closed(lo, hi);
  const MatrixFunction J = system.J();
  const MatrixFunction B = system.B();
  auto value = [fs](double x, double) -> CMatrix { return fs->value_at(x); };
  auto deriv = [fs, J, B](double x, double l) -> CMatrix {
    return -J.value(x, l).partialPivLu().solve(B.value(x, l) * fs->value_at(x));
  };
  const int n = system.n();
  GaugeTransform u(MatrixFunction::numeric(n, n, hull, system.breakpoints(), value, deriv));
  const SymmetricSystem restricted(hull, J, B, system.H(), system.x0());
  SymmetricSystem reduced = gauge_apply(restricted, u, targets);
  return {std::move(u), std::move(reduced)};
}

}  // namespace symsys

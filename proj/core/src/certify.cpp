#include "symsys/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "symsys/errors.hpp"
#include "symsys/quadrature.hpp"

namespace symsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string at(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double real_scalar(const CMatrix& m) { return m(0, 0).real(); }

std::vector<double> union_breaks(std::initializer_list<std::vector<double>> lists) {
  std::vector<double> out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// Speed -------------------------------------------------------------------------

SpeedFunction SpeedFunction::square(MatrixFunction A, MatrixFunction J, MatrixFunction H) {
  SpeedFunction s;
  s.form_ = Form::Square;
  s.A_ = std::move(A);
  s.J_ = std::move(J);
  s.H_ = std::move(H);
  return s;
}

SpeedFunction SpeedFunction::hamiltonian(MatrixFunction J, MatrixFunction H) {
  SpeedFunction s;
  s.form_ = Form::Hamiltonian;
  s.J_ = std::move(J);
  s.H_ = std::move(H);
  return s;
}

double SpeedFunction::operator()(double x, double tol) const {
  CMatrix hi;
  if (!inverse_sqrt(H_(x), tol, hi)) return kInf;
  if (form_ == Form::Hamiltonian) return operator_norm(hi * J_(x) * hi);
  CMatrix ai;
  if (!inverse_sqrt(A_(x), tol, ai)) return kInf;
  return operator_norm(ai * J_(x) * hi);
}

double SpeedFunction::reciprocal(double x, double tol) const {
  const double c = (*this)(x, tol);
  return std::isinf(c) ? 0.0 : 1.0 / c;
}

double speed(const SpeedFunction& c, double x, double tol) { return c(x, tol); }

// Divergence ------------------------------------------------------------------------

const char* to_string(Divergence d) {
  switch (d) {
    case Divergence::Diverges:
      return "diverges";
    case Divergence::Converges:
      return "converges";
    case Divergence::Unknown:
      return "unknown";
  }
  return "?";
}

DivergenceResult divergence_test(const std::function<double(double)>& integrand, double endpoint,
                                 const DivergenceSchedule& sch) {
  DivergenceResult res;
  const double o = sch.origin;
  if (endpoint == o) throw InputError("divergence test endpoint equals the origin");
  std::vector<double> ends;
  if (std::isinf(endpoint)) {
    const double dir = endpoint > 0 ? 1.0 : -1.0;
    ends.push_back(o + dir * sch.first);
    for (int k = 1; k <= sch.doublings; ++k) ends.push_back(o + dir * sch.first * std::ldexp(1.0, k));
  } else {
    const double d = endpoint - o;
    for (int k = 1; k <= sch.doublings + 1; ++k) ends.push_back(endpoint - d * std::ldexp(1.0, -k));
  }
  std::vector<double> inc;
  double prev = o;
  double total = 0.0;
  try {
    for (double e : ends) {
      const double lo = std::min(prev, e);
      const double hi = std::max(prev, e);
      const double v = integrate_real(
          [&](double x) {
            const double y = integrand(x);
            if (!(y >= 0.0) || std::isinf(y)) {
              throw NumericalError("integrand is negative or not finite at x = " + at(x));
            }
            return y;
          },
          lo, hi, sch.reltol, 1e-300);
      inc.push_back(v);
      total += v;
      res.ends.push_back(e);
      res.partial.push_back(total);
      prev = e;
    }
  } catch (const std::exception& ex) {
    res.verdict = Divergence::Unknown;
    res.note = ex.what();
    return res;
  }
  for (std::size_t k = 1; k < inc.size(); ++k) {
    double r;
    if (inc[k - 1] == 0.0) r = inc[k] == 0.0 ? 0.0 : kInf;
    else r = inc[k] / inc[k - 1];
    res.ratios.push_back(r);
  }
  const int m = std::min<int>(sch.ratios, static_cast<int>(res.ratios.size()));
  if (m < sch.ratios) {
    res.note = "schedule too short";
    return res;
  }
  const auto tail = res.ratios.end() - m;
  if (std::all_of(tail, res.ratios.end(), [&](double r) { return r >= sch.diverge_ratio; })) {
    res.verdict = Divergence::Diverges;
    res.tail_estimate = kInf;
    return res;
  }
  if (std::all_of(tail, res.ratios.end(), [&](double r) { return r <= sch.converge_ratio; })) {
    const double rmax = *std::max_element(tail, res.ratios.end());
    res.tail_estimate = inc.back() * rmax / (1.0 - rmax);
    if (res.tail_estimate <= sch.tail_tol * std::abs(total)) {
      res.verdict = Divergence::Converges;
      return res;
    }
    res.note = "increments decay but the extrapolated tail is not small";
    return res;
  }
  res.note = "increments neither decay geometrically nor stagnate";
  return res;
}

// Cutoff sequence ---------------------------------------------------------------------

struct CutoffSequence::Cache {
  std::mutex mutex;
  std::vector<double> right{0.0};  // F(origin + j step)
  std::vector<double> left{0.0};   // F(origin - j step)
};

CutoffSequence::CutoffSequence(std::function<double(double)> f, Interval domain, double origin, double lattice_step)
    : f_(std::move(f)), domain_(domain), origin_(origin), step_(lattice_step), cache_(std::make_shared<Cache>()) {
  if (!(step_ > 0.0)) throw InputError("lattice step must be positive");
  if (!(origin_ >= domain_.left && origin_ <= domain_.right)) throw InputError("origin outside the cutoff domain");
}

double CutoffSequence::profile(double t) {
  const double a = std::abs(t);
  if (a <= kPlateau) return 1.0;
  if (a >= kSupport) return 0.0;
  const double s = (a - kPlateau) / (kSupport - kPlateau);
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double CutoffSequence::profile_derivative(double t) {
  const double a = std::abs(t);
  if (a <= kPlateau || a >= kSupport) return 0.0;
  const double s = (a - kPlateau) / (kSupport - kPlateau);
  const double d = 30.0 * s * s * (1.0 - s) * (1.0 - s) / (kSupport - kPlateau);
  return t > 0 ? -d : d;
}

double CutoffSequence::f(double x) const {
  const double v = f_(x);
  if (!(v >= 0.0)) throw InputError("cutoff integrand is negative at x = " + at(x));
  return v;
}

double CutoffSequence::cumulative(double x) const {
  if (!domain_.contains(x) && x != origin_) throw DomainError("x = " + at(x) + " is outside " + domain_.to_string());
  const auto fn = [this](double s) { return f(s); };
  const double d = x - origin_;
  const bool right = d >= 0.0;
  const auto j = static_cast<std::size_t>(std::floor(std::abs(d) / step_));
  double base;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    std::vector<double>& nodes = right ? cache_->right : cache_->left;
    while (nodes.size() <= j) {
      const std::size_t k = nodes.size() - 1;
      const double a = origin_ + (right ? 1.0 : -1.0) * step_ * static_cast<double>(k);
      const double b = origin_ + (right ? 1.0 : -1.0) * step_ * static_cast<double>(k + 1);
      const double piece = integrate_real(fn, std::min(a, b), std::max(a, b), 1e-13, 1e-300);
      nodes.push_back(nodes.back() + (right ? piece : -piece));
    }
    base = nodes[j];
  }
  const double node = origin_ + (right ? 1.0 : -1.0) * step_ * static_cast<double>(j);
  if (node == x) return base;
  const double rest = integrate_real(fn, std::min(node, x), std::max(node, x), 1e-13, 1e-300);
  return base + (right ? rest : -rest);
}

double CutoffSequence::value(int n, double x) const { return profile(cumulative(x) / n); }

double CutoffSequence::derivative(int n, double x) const {
  return profile_derivative(cumulative(x) / n) * f(x) / n;
}

std::optional<double> CutoffSequence::support_edge(int n, bool right, double limit) const {
  const double target = kSupport * n;
  const double dir = right ? 1.0 : -1.0;
  const auto fn = [this](double s) { return f(s); };
  const double bound = right ? domain_.right : domain_.left;
  // Doubling checkpoints, then bisection inside the bracketing one.
  double a = origin_;
  double fa = 0.0;
  double dist = step_;
  for (;;) {
    double b = origin_ + dir * dist;
    bool clipped = false;
    if ((right && b >= bound) || (!right && b <= bound)) {
      b = bound;
      clipped = true;
      if (!std::isfinite(b)) return std::nullopt;
    }
    const double piece = integrate_real(fn, std::min(a, b), std::max(a, b), 1e-13, 1e-300);
    const double fb = fa + piece;
    if (fb >= target) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = flo + integrate_real(fn, std::min(lo, mid), std::max(lo, mid), 1e-13, 1e-300);
        if (fm >= target) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      return hi;
    }
    if (clipped || dist >= limit) return std::nullopt;
    a = b;
    fa = fb;
    dist *= 2.0;
  }
}

CutoffFunction cutoff_sequence(std::shared_ptr<const CutoffSequence> sequence, int n) {
  if (n < 1) throw InputError("cutoff index must be positive");
  return {std::move(sequence), n};
}

// Gradient bound ---------------------------------------------------------------------

GradientBound check_gradient_bound(const CoefficientField& q, const SpeedFunction& c, const std::vector<double>& grid,
                                   double tol) {
  if (q.rows() != 1 || q.cols() != 1) throw InputError("q must be scalar");
  const CoefficientField dq = q.differentiate();
  GradientBound out;
  // c(x) |d/dx q^{-1/2}|, or nullopt where the bound fails (c infinite, slope nonzero).
  auto term = [&](double x, bool checked) -> std::optional<double> {
    const double qv = real_scalar(q.evaluate(x));
    if (checked && qv < 1.0 - tol) throw InputError("q < 1 at x = " + at(x));
    const double slope = std::abs(-0.5 * std::pow(qv, -1.5) * real_scalar(dq.evaluate(x)));
    const double cv = c(x, tol);
    if (std::isinf(cv)) {
      if (slope > tol) return std::nullopt;
      return 0.0;
    }
    return cv * slope;
  };
  auto sweep = [&](const std::vector<double>& xs, bool checked, double& best, double& arg, std::size_t& idx) -> bool {
    best = 0.0;
    arg = xs.empty() ? 0.0 : xs.front();
    idx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      std::optional<double> v;
      try {
        v = term(xs[k], checked);
      } catch (const EvaluationError&) {
        if (checked) throw;
        continue;
      } catch (const DomainError&) {
        if (checked) throw;
        continue;
      }
      if (!v) {
        out.failure_x = xs[k];
        return false;
      }
      if (*v > best) {
        best = *v;
        arg = xs[k];
        idx = k;
      }
    }
    return true;
  };

  std::vector<double> xs = grid;
  std::sort(xs.begin(), xs.end());
  double best = 0.0, arg = 0.0;
  std::size_t idx = 0;
  if (!sweep(xs, true, best, arg, idx)) {
    out.reason = "c is infinite where q^{-1/2} is not constant";
    return out;
  }
  // Golden-section refinement between the neighbours of the maximiser.
  if (xs.size() >= 3 && best > 0.0) {
    // At either end of the grid, search one spacing further out so a supremum at an
    // interval end is reached (points outside the domain evaluate to 0).
    double lo = idx == 0 ? 2.0 * xs[0] - xs[1] : xs[idx - 1];
    double hi = idx + 1 == xs.size() ? 2.0 * xs[idx] - xs[idx - 1] : xs[idx + 1];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto val = [&](double x) {
      try {
        const auto v = term(x, false);
        return v ? *v : 0.0;
      } catch (const std::exception&) {
        return 0.0;
      }
    };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = val(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = val(x2);
      }
    }
    if (std::max(f1, f2) > best) {
      best = std::max(f1, f2);
      arg = f1 > f2 ? x1 : x2;
    }
  }
  out.C = best;
  out.argmax = arg;
  out.window_maxima.push_back(best);

  // Dilate the sample range to look for a supremum that keeps growing.
  const Interval dom = q.domain();
  for (double factor : {2.0, 4.0}) {
    std::vector<double> wide;
    for (double x : xs) {
      if (dom.contains(x * factor)) wide.push_back(x * factor);
    }
    if (wide.size() < xs.size() / 2) break;
    double wb = 0.0, wa = 0.0;
    std::size_t wi = 0;
    if (!sweep(wide, false, wb, wa, wi)) {
      out.reason = "c is infinite where q^{-1/2} is not constant";
      return out;
    }
    out.window_maxima.push_back(std::max(wb, best));
  }
  if (out.window_maxima.size() == 3 && out.window_maxima[1] > out.window_maxima[0] * 1.01 + tol &&
      out.window_maxima[2] > out.window_maxima[1] * 1.01 + tol) {
    out.reason = "the bound keeps growing as the sampling window widens";
    return out;
  }
  out.ok = true;
  return out;
}

// Certificates --------------------------------------------------------------------------

const char* to_string(Route r) {
  switch (r) {
    case Route::Auto:
      return "auto";
    case Route::Weighted:
      return "weighted";
    case Route::Hamiltonian:
      return "hamiltonian";
    case Route::SturmLiouville:
      return "sturm-liouville";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::HypothesesFailed:
      return "hypotheses_failed";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Route parse_route(const std::string& name) {
  for (Route r : {Route::Auto, Route::Weighted, Route::Hamiltonian, Route::SturmLiouville}) {
    if (name == to_string(r)) return r;
  }
  throw InputError("unknown route '" + name + "' (expected auto, weighted, hamiltonian or sturm-liouville)");
}

namespace {

void fail(Certificate& cert, const std::string& item) {
  if (cert.failed_item.empty()) cert.failed_item = item;
  cert.verdict = Verdict::HypothesesFailed;
}

// Shared tail of both overloads: V >= -qH, the gradient bound and the two divergence tests.
void run_conditions(Certificate& cert, const CoefficientField& V, const CoefficientField& q, const MatrixFunction& H,
                    const SpeedFunction& c, const std::vector<double>& grid, const CertifyOptions& opt) {
  cert.min_eig_v_plus_qh = kInf;
  for (double x : grid) {
    const CMatrix m = V.evaluate(x) + q.evaluate(x)(0, 0) * H(x);
    const double e = hermitian_eigenvalues(m)(0);
    if (e < cert.min_eig_v_plus_qh) cert.min_eig_v_plus_qh = e;
    if (e < -opt.tol && !cert.potential_failure_x) cert.potential_failure_x = x;
  }
  if (cert.potential_failure_x) fail(cert, "V >= -qH");

  cert.gradient = check_gradient_bound(q, c, grid, opt.tol);
  if (!cert.gradient.ok) fail(cert, "gradient bound");

  auto integrand = [&](double x) { return c.reciprocal(x, opt.tol) / std::sqrt(q.evaluate(x)(0, 0).real()); };
  DivergenceSchedule sch = opt.schedule;
  sch.origin = 0.0;
  cert.toward_plus = divergence_test(integrand, kInf, sch);
  cert.toward_minus = divergence_test(integrand, -kInf, sch);
  const bool converges =
      cert.toward_plus.verdict == Divergence::Converges || cert.toward_minus.verdict == Divergence::Converges;
  const bool unknown = cert.toward_plus.verdict == Divergence::Unknown || cert.toward_minus.verdict == Divergence::Unknown;
  if (converges) fail(cert, "divergence");
  if (cert.verdict != Verdict::HypothesesFailed) cert.verdict = unknown ? Verdict::Inconclusive : Verdict::Certified;
}

}  // namespace

Certificate certify_selfadjoint(const SymmetricSystem& system, const CertifyOptions& options) {
  if (!system.interval().is_real_line()) throw InputError("certification needs the interval (-inf, inf)");
  Certificate cert;
  Route route = options.route == Route::Auto ? Route::Hamiltonian : options.route;
  if (route == Route::SturmLiouville) {
    throw InputError("the sturm-liouville route needs A and V; give a square system spec");
  }
  cert.route = route;
  const std::vector<double> grid = system.default_grid(options.grid);
  const ValidationReport vr = validate(system, grid, options.tol);
  cert.structure_ok = vr.pass;
  cert.structure_failure_x = vr.first_failure;
  cert.verdict = Verdict::Certified;
  if (!vr.pass) fail(cert, "structure");
  const int n = system.n();
  const CoefficientField V = CoefficientField::zero(n, n);
  const CoefficientField q = CoefficientField::identity(1);
  if (route == Route::Hamiltonian) {
    run_conditions(cert, V, q, system.H(), SpeedFunction::hamiltonian(system.J(), system.H()), grid, options);
    return cert;
  }
  // Weighted route with A = H, V = 0, q = 1 on the square of the system.
  const SpeedFunction c = SpeedFunction::square(system.H(), system.J(), system.H());
  run_conditions(cert, V, q, system.H(), c, grid, options);
  if (cert.verdict == Verdict::Certified && system.is_symbolic()) {
    const CoefficientField& H = *system.H().symbolic();
    const SquareSystemSpec spec{system, H, V, q};
    const SymmetricSystem sq = square_system(spec, options.tol);
    cert.definite = definiteness(sq, default_candidates(sq, {1.0, 2.0, 4.0, 8.0}), cd(0.0, 1.0)).definite;
  }
  return cert;
}

Certificate certify_selfadjoint(const SquareSystemSpec& spec, const CertifyOptions& options) {
  const SymmetricSystem& base = spec.base;
  if (!base.interval().is_real_line()) throw InputError("certification needs the interval (-inf, inf)");
  Certificate cert;
  const std::vector<double> grid = chebyshev_grid(
      base.interval(), union_breaks({base.breakpoints(), spec.A.breakpoints(), spec.V.breakpoints(), spec.q.breakpoints()}),
      options.grid);
  const bool sl = spec.is_sturm_liouville(grid, options.tol);
  Route route = options.route;
  if (route == Route::Auto) route = sl ? Route::SturmLiouville : Route::Weighted;
  if (route == Route::Hamiltonian) throw InputError("the hamiltonian route applies to a bare system");
  if (route == Route::SturmLiouville && !sl) throw InputError("the sturm-liouville route needs J = iI and B = 0");
  cert.route = route;
  cert.verdict = Verdict::Certified;

  const ValidationReport vr = validate(base, grid, options.tol);
  cert.structure_ok = vr.pass;
  cert.structure_failure_x = vr.first_failure;
  try {
    check_square_spec(spec, grid, options.tol);
  } catch (const InputError& e) {
    cert.structure_ok = false;
    cert.notes.push_back(e.what());
  }
  if (!cert.structure_ok) fail(cert, "structure");

  if (route == Route::SturmLiouville) {
    for (double x : grid) {
      if (hermitian_eigenvalues(spec.A.evaluate(x))(0) <= options.tol) {
        cert.a_positive_definite = false;
        cert.notes.push_back("A is not positive definite at x = " + at(x));
        break;
      }
    }
    if (!cert.a_positive_definite) fail(cert, "A positive definite");
  }
  const SpeedFunction c = SpeedFunction::square(spec.A, base.J(), base.H());
  run_conditions(cert, spec.V, spec.q, base.H(), c, grid, options);
  if (route == Route::Weighted && cert.verdict == Verdict::Certified && base.is_symbolic()) {
    const SymmetricSystem sq = square_system(spec, options.tol);
    cert.definite = definiteness(sq, default_candidates(sq, {1.0, 2.0, 4.0, 8.0}), cd(0.0, 1.0)).definite;
  }
  return cert;
}

// Estimate check -----------------------------------------------------------------------------

ShubinResult shubin_verify(const SquareSystemSpec& spec, const CoefficientField& f1, const Interval& support,
                           double tol, std::optional<double> C) {
  const SymmetricSystem& base = spec.base;
  const int n = base.n();
  if (f1.rows() != n || f1.cols() != 1) throw InputError("f1 must be an n x 1 field");
  if (!std::isfinite(support.left) || !std::isfinite(support.right)) throw InputError("support must be compact");
  if (!base.B().has_derivative()) throw InputError("B must be differentiable");
  ShubinResult res;
  if (C) {
    res.C = *C;
  } else {
    const GradientBound gb =
        check_gradient_bound(spec.q, SpeedFunction::square(spec.A, base.J(), base.H()), base.default_grid());
    if (!gb.ok) throw NumericalError("gradient bound fails: " + gb.reason);
    res.C = gb.C;
  }
  const MatrixFunction F1(f1);
  const CoefficientField d1 = f1.differentiate();
  const MatrixFunction F1p(d1);
  const MatrixFunction F1pp(d1.differentiate());
  const MatrixFunction A(spec.A);
  const MatrixFunction V(spec.V);
  const MatrixFunction Q(spec.q);

  const std::vector<double> cuts = union_breaks({f1.breakpoints(), base.breakpoints(), spec.A.breakpoints(),
                                                 spec.V.breakpoints(), spec.q.breakpoints()});
  std::vector<double> edges{support.left};
  for (double p : cuts) {
    if (p > support.left && p < support.right) edges.push_back(p);
  }
  edges.push_back(support.right);

  double lhs = 0.0, fsq = 0.0, gsq = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double loc = 0.5 * (edges[k] + edges[k + 1]);
    auto integrand = [&](double x) {
      const CMatrix a = A.value(x, loc);
      if (min_singular_value(a) <= tol * std::max(1.0, operator_norm(a))) {
        throw NumericalError("A is singular on the support at x = " + at(x));
      }
      const CMatrix ainv = a.inverse();
      const CMatrix J = base.J().value(x, loc);
      const CMatrix B = base.B().value(x, loc);
      const CMatrix H = base.H().value(x, loc);
      const CMatrix f = F1.value(x, loc);
      const CMatrix fp = F1p.value(x, loc);
      const CMatrix u = J * fp + B * f;
      const CMatrix up = base.J().derivative(x, loc) * fp + J * F1pp.value(x, loc) +
                         base.B().derivative(x, loc) * f + B * fp;
      const CMatrix f2 = ainv * u;
      const CMatrix f2p = -ainv * A.derivative(x, loc) * ainv * u + ainv * up;
      const CMatrix r = J * f2p + B * f2 + V.value(x, loc) * f;
      const CMatrix g1 = pseudo_inverse(H, tol) * r;
      const double resid = (r - H * g1).norm();
      res.range_residual = std::max(res.range_residual, resid / std::max(1.0, r.norm()));
      const double q = Q.value(x, loc)(0, 0).real();
      CMatrix out(3, 1);
      out(0, 0) = (f2.adjoint() * a * f2)(0, 0).real() / q;
      out(1, 0) = (f.adjoint() * H * f)(0, 0).real();
      out(2, 0) = (g1.adjoint() * H * g1)(0, 0).real();
      return out;
    };
    const QuadratureResult qr = integrate_matrix(integrand, edges[k], edges[k + 1], 1e-12, 1e-300);
    lhs += qr.value(0, 0).real();
    fsq += qr.value(1, 0).real();
    gsq += qr.value(2, 0).real();
  }
  if (res.range_residual > tol) {
    throw NumericalError("J f2' + B f2 + V f1 leaves the range of H (relative residual " +
                         at(res.range_residual) + ")");
  }
  res.lhs = lhs;
  res.f_norm = std::sqrt(std::max(0.0, fsq));
  res.g_norm = std::sqrt(std::max(0.0, gsq));
  res.rhs = 2.0 * ((1.0 + 2.0 * res.C * res.C) * res.f_norm * res.f_norm + res.f_norm * res.g_norm);
  res.satisfied = res.lhs <= res.rhs + tol * std::max(1.0, res.rhs);
  return res;
}

CoefficientField polynomial_bump(const std::vector<std::vector<double>>& coefficients, double m, double w, int k) {
  if (coefficients.empty()) throw InputError("bump needs at least one component");
  if (!(w > 0.0) || k < 0) throw InputError("bump needs w > 0 and k >= 0");
  const Expression x = Expression::variable();
  const Expression s = (x - Expression::constant(m)) / Expression::constant(w);
  const Expression envelope = Expression::power(Expression::constant(1.0) - Expression::power(s, 2), k);
  std::vector<Expression> inside;
  std::vector<Expression> zeros;
  for (const auto& c : coefficients) {
    Expression p = Expression::constant(0.0);
    for (std::size_t j = c.size(); j-- > 0;) p = p * x + Expression::constant(c[j]);
    inside.push_back(p * envelope);
    zeros.push_back(Expression::constant(0.0));
  }
  const int rows = static_cast<int>(coefficients.size());
  std::vector<FieldPiece> pieces{{{-kInf, m - w, false, false}, zeros},
                                 {{m - w, m + w, true, false}, inside},
                                 {{m + w, kInf, true, false}, zeros}};
  return CoefficientField(rows, 1, std::move(pieces));
}

}  // namespace symsys

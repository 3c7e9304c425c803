#include "symsys/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symsys/errors.hpp"
#include "symsys/propagator.hpp"
#include "symsys/quadrature.hpp"

namespace symsys {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool invertible(const CMatrix& g, double tol, double& min_sv, double& norm) {
  const Eigen::VectorXd sv = singular_values(g);
  norm = sv.size() ? sv(0) : 0.0;
  min_sv = sv.size() ? sv(sv.size() - 1) : 0.0;
  return norm > 0.0 && min_sv > tol * norm;
}

CMatrix integral_of_h(const SymmetricSystem& s, double a, double b) {
  std::vector<double> edges{a};
  for (double p : s.breakpoints()) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  CMatrix total = CMatrix::Zero(s.n(), s.n());
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double loc = 0.5 * (edges[k] + edges[k + 1]);
    total += integrate_matrix([&](double x) { return s.H().value(x, loc); }, edges[k], edges[k + 1], 1e-12).value;
  }
  return total;
}

CMatrix gram_on(const SymmetricSystem& s, cd lambda, const Interval& iv, double reltol) {
  const FundamentalSolution fs = propagate(s, lambda, {iv.left, iv.right}, reltol);
  return gram_matrix(fs, iv);
}

int shared_dimension(const CMatrix& q1, const CMatrix& q2, double threshold) {
  if (q1.cols() == 0 || q2.cols() == 0) return 0;
  const Eigen::VectorXd c = principal_cosines(q1, q2);
  int count = 0;
  for (int k = 0; k < c.size(); ++k) {
    if (c(k) >= 1.0 - threshold) ++count;
  }
  return count;
}

double log_norm_normalize(CMatrix& y) {
  const double nrm = y.norm();
  if (nrm > 0.0 && std::isfinite(nrm)) {
    y /= nrm;
    return std::log(nrm);
  }
  return 0.0;
}

struct Window {
  double from;
  double to;
};

Integrability decide(const DirectionVerdict& d, const ClassificationOptions& opt) {
  const auto& m = d.log_window_mass;
  const int need = opt.ratios_used + 1;
  if (static_cast<int>(m.size()) < need) return Integrability::Inconclusive;
  const auto tail = m.end() - need;
  if (std::all_of(tail, m.end(), [](double v) { return v == kNegInf; })) return Integrability::Integrable;
  if (std::any_of(tail, m.end(), [](double v) { return v == kNegInf; })) return Integrability::Inconclusive;
  const auto r = d.ratios.end() - opt.ratios_used;
  if (std::all_of(r, d.ratios.end(), [&](double v) { return v <= opt.decay_ratio; })) return Integrability::Integrable;
  if (std::all_of(r, d.ratios.end(), [&](double v) { return v >= opt.growth_ratio * (1.0 - 1e-9); })) {
    return Integrability::Divergent;
  }
  return Integrability::Inconclusive;
}

double fit_growth(const std::vector<Window>& windows, const std::vector<double>& logm, double x0) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < logm.size(); ++k) {
    if (!std::isfinite(logm[k])) continue;
    const double x = std::abs(0.5 * (windows[k].from + windows[k].to) - x0);
    const double y = logm[k] - std::log(std::abs(windows[k].to - windows[k].from));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  return n >= 2 && den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

bool coefficients_extend_to(const SymmetricSystem& s, double x, double inside) {
  try {
    for (const MatrixFunction* m : {&s.J(), &s.B(), &s.H()}) {
      if (!m->domain().contains(x)) return false;
      if (!m->value(x, inside).allFinite()) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

EndpointClassification classify_infinite(const SymmetricSystem& s, cd lambda, const std::vector<double>& truncations,
                                         bool right, const ClassificationOptions& opt) {
  EndpointClassification ec;
  ec.right = right;
  ec.kind = EndpointKind::Infinite;
  const double sgn = right ? 1.0 : -1.0;
  ec.endpoint = sgn * std::numeric_limits<double>::infinity();
  const int n = s.n();
  const double x0 = s.x0();

  // Pass 1: carry Phi across the windows with rescaling; accumulate the Gram in the
  // current scale and cut the schedule when Phi becomes too ill conditioned.
  std::vector<Window> windows;
  CMatrix y = CMatrix::Identity(n, n);
  double log_s = 0.0;
  CMatrix g = CMatrix::Zero(n, n);
  double prev = x0;
  for (double t : truncations) {
    const double p = x0 + sgn * t;
    const SegmentResult seg = integrate_segment(s, lambda, prev, y, p, opt.reltol);
    const double seg_log = log_s + seg.log_scale;
    CMatrix ynew = seg.values;
    const double norm_log = log_norm_normalize(ynew);
    const double new_log = seg_log + norm_log;
    g = std::exp(2.0 * (log_s - new_log)) * g + std::exp(2.0 * (seg_log - new_log)) * seg.gram;
    y = ynew;
    log_s = new_log;
    windows.push_back({prev, p});
    ec.truncations_used.push_back(t);
    prev = p;
    const Eigen::VectorXd sv = singular_values(y);
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (opt.reltol * cond > opt.conditioning_limit) {
      std::ostringstream os;
      os << "schedule cut at distance " << t << " (cond(Phi) = " << cond << ")";
      ec.note = os.str();
      break;
    }
  }

  // Pass 2: follow each Gram eigendirection window by window. The least-mass directions
  // of the Gram over the whole schedule pick up a growing component near its far end,
  // so the last window is left out of the verdict.
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (g + g.adjoint()));
  if (!windows.empty()) windows.pop_back();
  std::vector<CVector> integrable;
  std::vector<CVector> possible;
  for (int k = 0; k < n; ++k) {
    DirectionVerdict d;
    d.initial = eig.eigenvectors().col(k);
    CMatrix v = d.initial;
    double lv = 0.0;
    for (const Window& w : windows) {
      const SegmentResult seg = integrate_segment(s, lambda, w.from, v, w.to, opt.reltol);
      const double seg_log = lv + seg.log_scale;
      const double mass = seg.gram(0, 0).real();
      d.log_window_mass.push_back(mass > 0.0 ? 2.0 * seg_log + std::log(mass) : kNegInf);
      v = seg.values;
      lv = seg_log + log_norm_normalize(v);
    }
    for (std::size_t j = 1; j < d.log_window_mass.size(); ++j) {
      const double a = d.log_window_mass[j - 1];
      const double b = d.log_window_mass[j];
      double r;
      if (a == kNegInf && b == kNegInf) r = 0.0;
      else if (a == kNegInf) r = std::numeric_limits<double>::infinity();
      else if (b == kNegInf) r = 0.0;
      else r = std::exp(b - a);
      d.ratios.push_back(r);
    }
    d.verdict = decide(d, opt);
    d.growth_rate = fit_growth(windows, d.log_window_mass, x0);
    if (d.verdict == Integrability::Integrable) integrable.push_back(d.initial);
    if (d.verdict != Integrability::Divergent) possible.push_back(d.initial);
    ec.directions.push_back(std::move(d));
  }
  auto stack = [n](const std::vector<CVector>& cols) {
    CMatrix m(n, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<int>(j)) = cols[j];
    return m;
  };
  ec.integrable = stack(integrable);
  ec.possibly_integrable = stack(possible);
  if (static_cast<int>(windows.size()) < opt.ratios_used + 1 && ec.note.empty()) {
    ec.note = "too few truncations for a verdict";
  }
  return ec;
}

EndpointClassification classify_endpoint(const SymmetricSystem& s, cd lambda, const std::vector<double>& truncations,
                                         bool right, const ClassificationOptions& opt) {
  const Interval& iv = s.interval();
  const double end = right ? iv.right : iv.left;
  const bool closed = right ? iv.right_closed : iv.left_closed;
  if (std::isinf(end)) return classify_infinite(s, lambda, truncations, right, opt);
  EndpointClassification ec;
  ec.right = right;
  ec.endpoint = end;
  const int n = s.n();
  const double inside = right ? std::nextafter(end, -std::numeric_limits<double>::infinity())
                              : std::nextafter(end, std::numeric_limits<double>::infinity());
  if (closed || coefficients_extend_to(s, end, inside)) {
    ec.kind = EndpointKind::Regular;
    ec.integrable = CMatrix::Identity(n, n);
    ec.possibly_integrable = ec.integrable;
    if (!closed) ec.note = "coefficients extend continuously to the open endpoint; treated as regular";
    return ec;
  }
  ec.kind = EndpointKind::SingularFinite;
  ec.integrable = CMatrix(n, 0);
  ec.possibly_integrable = CMatrix::Identity(n, n);
  ec.note = "finite singular endpoint: not classified";
  for (int k = 0; k < n; ++k) {
    DirectionVerdict d;
    d.initial = CVector::Unit(n, k);
    ec.directions.push_back(d);
  }
  return ec;
}

}  // namespace

const char* to_string(Integrability v) {
  switch (v) {
    case Integrability::Integrable:
      return "integrable";
    case Integrability::Divergent:
      return "divergent";
    case Integrability::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<Interval> default_candidates(const SymmetricSystem& system, const std::vector<double>& radii) {
  const Interval& iv = system.interval();
  const double x0 = system.x0();
  std::vector<Interval> out;
  for (double t : radii) {
    double a = x0 - t;
    double b = x0 + t;
    if (a < iv.left || (a == iv.left && !iv.left_closed)) {
      a = iv.left_closed ? iv.left : iv.left + 1e-9 * std::max(1.0, iv.right - iv.left);
    }
    if (b > iv.right || (b == iv.right && !iv.right_closed)) {
      b = iv.right_closed ? iv.right : iv.right - 1e-9 * std::max(1.0, iv.right - iv.left);
    }
    if (a < b) out.push_back(Interval::closed(a, b));
  }
  return out;
}

DefinitenessReport definiteness(const SymmetricSystem& system, const std::vector<Interval>& candidates, cd lambda,
                                double tol, double reltol) {
  if (candidates.empty()) throw InputError("definiteness needs at least one candidate interval");
  DefinitenessReport rep;
  rep.lambda_used = lambda;
  rep.cross_check_lambda = lambda + cd(0.5, 0.5);
  for (const Interval& c : candidates) {
    if (!std::isfinite(c.left) || !std::isfinite(c.right) || !(c.left < c.right) ||
        !system.interval().contains(c.left) || !system.interval().contains(c.right)) {
      throw InputError("candidate " + c.to_string() + " is not a compact subinterval of " +
                       system.interval().to_string());
    }
    CandidateResult cr;
    cr.interval = Interval::closed(c.left, c.right);
    cr.invertible = invertible(gram_on(system, lambda, cr.interval, reltol), tol, cr.gram_min_sv, cr.gram_norm);
    double msv = 0.0, nrm = 0.0;
    cr.invertible_at_cross_check =
        invertible(gram_on(system, rep.cross_check_lambda, cr.interval, reltol), tol, msv, nrm);
    cr.h_integral_invertible =
        invertible(integral_of_h(system, c.left, c.right), tol, cr.h_integral_min_sv, cr.h_integral_norm);
    if (cr.invertible != cr.invertible_at_cross_check) rep.lambda_disagreement = true;
    if (cr.h_integral_invertible) rep.simple_criterion_passed = true;
    rep.candidates.push_back(cr);
    if (cr.invertible && !rep.definite) {
      rep.definite = true;
      rep.witness_interval = cr.interval;
      rep.min_sv = cr.gram_min_sv;
    }
  }
  if (!rep.definite) rep.min_sv = rep.candidates.back().gram_min_sv;
  return rep;
}

SolutionClassification classify_solutions(const SymmetricSystem& system, cd lambda,
                                          const std::vector<double>& truncations,
                                          const ClassificationOptions& options) {
  if (!std::is_sorted(truncations.begin(), truncations.end()) ||
      std::any_of(truncations.begin(), truncations.end(), [](double t) { return !(t > 0.0); })) {
    throw InputError("truncations must be positive and increasing");
  }
  const Interval& iv = system.interval();
  const double x0 = system.x0();
  auto usable = [&](bool right) {
    std::vector<double> out;
    for (double t : truncations) {
      const double p = right ? x0 + t : x0 - t;
      if (iv.contains(p)) out.push_back(t);
    }
    return out;
  };
  SolutionClassification sc;
  sc.lambda = lambda;
  const int n = system.n();
  CMatrix lo = CMatrix::Identity(n, n);
  CMatrix hi = lo;
  auto fold = [&](const EndpointClassification& ec) {
    const int dlo = shared_dimension(orthonormal_basis(lo), orthonormal_basis(ec.integrable), options.angle_threshold);
    const int dhi =
        shared_dimension(orthonormal_basis(hi), orthonormal_basis(ec.possibly_integrable), options.angle_threshold);
    // Keep a basis of the intersection: project one basis onto the other and keep the
    // shared directions.
    auto intersect_basis = [&](const CMatrix& a, const CMatrix& b, int dim) -> CMatrix {
      if (dim == 0 || a.cols() == 0 || b.cols() == 0) return CMatrix(n, 0);
      const CMatrix qa = orthonormal_basis(a);
      const CMatrix qb = orthonormal_basis(b);
      Eigen::JacobiSVD<CMatrix> svd(qa.adjoint() * qb, Eigen::ComputeThinU);
      return qa * svd.matrixU().leftCols(dim);
    };
    lo = intersect_basis(lo, ec.integrable, dlo);
    hi = intersect_basis(hi, ec.possibly_integrable, dhi);
  };
  sc.left = classify_endpoint(system, lambda, usable(false), false, options);
  fold(*sc.left);
  sc.right = classify_endpoint(system, lambda, usable(true), true, options);
  fold(*sc.right);
  sc.dim_lo = static_cast<int>(lo.cols());
  sc.dim_hi = static_cast<int>(hi.cols());
  return sc;
}

DeficiencyReport deficiency_indices(const SymmetricSystem& system, cd lambda, const std::vector<double>& truncations,
                                    const ClassificationOptions& options) {
  if (!(lambda.imag() > 0.0)) throw InputError("deficiency indices need Im lambda > 0");
  DeficiencyReport rep;
  rep.lambda = lambda;
  rep.plus = classify_solutions(system, lambda, truncations, options);
  rep.minus = classify_solutions(system, std::conj(lambda), truncations, options);
  rep.n_plus_lo = rep.plus.dim_lo;
  rep.n_plus_hi = rep.plus.dim_hi;
  rep.n_minus_lo = rep.minus.dim_lo;
  rep.n_minus_hi = rep.minus.dim_hi;
  if (truncations.size() >= 5) {
    const std::vector<double> shorter(truncations.begin(), truncations.end() - 1);
    const SolutionClassification p = classify_solutions(system, lambda, shorter, options);
    const SolutionClassification m = classify_solutions(system, std::conj(lambda), shorter, options);
    if (p.exact() && m.exact()) rep.previous_level = std::make_pair(p.dim_lo, m.dim_lo);
  }
  return rep;
}

LambdaInvariance lambda_invariance(const SymmetricSystem& system, const std::vector<cd>& lambdas,
                                   const std::vector<double>& truncations, const ClassificationOptions& options) {
  if (lambdas.empty()) throw InputError("lambda_invariance needs at least one lambda");
  LambdaInvariance out;
  out.lambdas = lambdas;
  for (cd l : lambdas) {
    if (!(l.imag() > 0.0)) throw InputError("lambda_invariance needs Im lambda > 0");
    const SolutionClassification sc = classify_solutions(system, l, truncations, options);
    out.dims_lo.push_back(sc.dim_lo);
    out.dims_hi.push_back(sc.dim_hi);
  }
  out.constant = true;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (out.dims_lo[k] != out.dims_hi[k] || out.dims_lo[k] != out.dims_lo[0]) out.constant = false;
  }
  const std::vector<Interval> cands = default_candidates(system, truncations);
  if (!cands.empty()) out.definite = definiteness(system, cands, lambdas.front()).definite;
  out.hypothesis_met = out.definite || system.interval().is_half_closed();
  return out;
}

}  // namespace symsys

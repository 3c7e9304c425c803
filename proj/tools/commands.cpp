#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "symsys/analysis.hpp"
#include "symsys/certify.hpp"
#include "symsys/errors.hpp"
#include "symsys/expression.hpp"
#include "symsys/propagator.hpp"

#ifndef SYMSYS_VERSION
#define SYMSYS_VERSION "0.0.0"
#endif

namespace symsys::cli {

using nlohmann::ordered_json;

namespace {

const std::vector<double> kDefaultTruncations{1, 2, 3, 4, 6, 8};
const std::vector<double> kCandidateRadii{1, 2, 4, 8};

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json num(std::optional<double> v) { return v ? num(*v) : ordered_json(nullptr); }

ordered_json complex_json(cd z) { return ordered_json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

ordered_json matrix_json(const CMatrix& m) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json a = ordered_json::array(), b = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      a.push_back(num(m(r, c).real()));
      b.push_back(num(m(r, c).imag()));
    }
    re.push_back(a);
    im.push_back(b);
  }
  return {{"re", re}, {"im", im}};
}

ordered_json interval_json(const Interval& i) { return i.to_string(); }

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string fmt(cd z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_matrix(const CMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cd z = m(r, c);
      if (c) os << ", ";
      const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
      const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
      if (im == 0.0) os << fmt(re);
      else if (re == 0.0) os << fmt(im) << "i";
      else os << fmt(cd(re, im));
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

struct Context {
  const Options& opt;
  const SystemFile& file;
  double tol(double fallback) const { return opt.tol.value_or(file.defaults.tol.value_or(fallback)); }
  GridOptions grid() const {
    GridOptions g;
    if (opt.grid) g.points_per_piece = *opt.grid;
    else if (file.defaults.grid) g.points_per_piece = *file.defaults.grid;
    if (g.points_per_piece < 2) throw InputError("grid must have at least 2 points per piece");
    return g;
  }
  std::vector<double> truncations() const {
    return opt.truncations.value_or(file.defaults.truncations.value_or(kDefaultTruncations));
  }
  cd lambda(cd fallback) const { return opt.lambda ? parse_complex(*opt.lambda) : fallback; }
};

ordered_json validation_json(const ValidationReport& r, bool points) {
  ordered_json j{{"pass", r.pass},
                 {"tol", num(r.tol)},
                 {"max_skew_residual", num(r.max_skew_residual)},
                 {"max_symmetry_residual", num(r.max_symmetry_residual)},
                 {"max_h_hermitian_residual", num(r.max_h_hermitian_residual)},
                 {"min_h_eig", num(r.min_h_eig)},
                 {"min_j_sv", num(r.min_j_sv)},
                 {"first_failure", num(r.first_failure)}};
  if (points) {
    ordered_json xs = ordered_json::array(), skew = ordered_json::array(), sym = ordered_json::array(),
                 heig = ordered_json::array();
    for (const auto& p : r.points) {
      xs.push_back(num(p.x));
      skew.push_back(num(p.skew_residual));
      sym.push_back(num(p.symmetry_residual));
      heig.push_back(num(p.h_min_eig));
    }
    j["x"] = xs;
    j["skew_residual"] = skew;
    j["symmetry_residual"] = sym;
    j["h_min_eig"] = heig;
  }
  return j;
}

std::string validation_text(const ValidationReport& r) {
  std::ostringstream os;
  os << "  |J + J*|        max " << fmt(r.max_skew_residual) << "\n"
     << "  |B - B* - J'|   max " << fmt(r.max_symmetry_residual) << "\n"
     << "  |H - H*|        max " << fmt(r.max_h_hermitian_residual) << "\n"
     << "  min eig H       " << fmt(r.min_h_eig) << "\n"
     << "  min sv J        " << fmt(r.min_j_sv) << "\n";
  if (r.first_failure) os << "  first failure at x = " << fmt(*r.first_failure, 12) << "\n";
  return os.str();
}

std::string system_text(const std::string& name, int n, const Interval& interval, std::optional<double> x0,
                        const SymmetricSystem& s) {
  std::ostringstream os;
  os << "[system]\nname = " << name << "\nn = " << n << "\ninterval = " << interval.to_string() << "\n";
  if (x0) os << "x0 = " << std::setprecision(17) << *x0 << "\n";
  os << "\n[J]\n" << s.J().symbolic()->to_string() << "\n\n[B]\n" << s.B().symbolic()->to_string() << "\n\n[H]\n"
     << s.H().symbolic()->to_string() << "\n";
  return os.str();
}

// Commands ----------------------------------------------------------------------------------

void cmd_validate(const Context& ctx, Outcome& out) {
  const SymmetricSystem sys = ctx.file.system();
  const double tol = ctx.tol(kDefaultTol);
  const std::vector<double> grid = sys.default_grid(ctx.grid());
  const ValidationReport r = validate(sys, grid, tol);
  out.report["verdicts"]["structure"] = r.pass ? "pass" : "fail";
  out.report["evidence"]["validation"] = validation_json(r, true);
  std::ostringstream os;
  os << "validate " << ctx.file.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << grid.size()
     << " grid points, tol " << fmt(tol) << ")\n"
     << validation_text(r);
  if (ctx.file.has_square_data()) {
    std::string message;
    try {
      check_square_spec(ctx.file.square_spec(), grid, tol);
    } catch (const InputError& e) {
      message = e.what();
    }
    out.report["verdicts"]["square_data"] = message.empty() ? "pass" : "fail";
    out.report["evidence"]["square_data"] = message;
    os << "  A, V, q: " << (message.empty() ? "pass" : "FAIL: " + message) << "\n";
  }
  out.text = os.str();
}

void cmd_reduce(const Context& ctx, Outcome& out) {
  const SymmetricSystem sys = ctx.file.system();
  const double tol = ctx.tol(1e-8);
  const std::vector<double> grid = sys.default_grid(ctx.grid());
  const CanonicalReduction red = canonical_reduce(sys, grid);
  const CMatrix j0 = red.system.J()(sys.x0());
  double max_b = 0.0, max_dj = 0.0;
  ordered_json xs = ordered_json::array(), bn = ordered_json::array();
  for (double x : grid) {
    const double b = operator_norm(red.system.B()(x));
    max_b = std::max(max_b, b);
    max_dj = std::max(max_dj, operator_norm(red.system.J()(x) - j0));
    xs.push_back(num(x));
    bn.push_back(num(b));
  }
  const bool canonical = max_b <= tol && max_dj <= tol;
  out.report["verdicts"]["canonical"] = canonical;
  out.report["evidence"] = {{"x0", num(sys.x0())},
                            {"tol", num(tol)},
                            {"J_reduced", matrix_json(j0)},
                            {"max_B_reduced", num(max_b)},
                            {"max_J_variation", num(max_dj)},
                            {"U_first", matrix_json(red.transform.value(grid.front()))},
                            {"U_last", matrix_json(red.transform.value(grid.back()))},
                            {"x", xs},
                            {"B_reduced_norm", bn}};
  std::ostringstream os;
  os << "reduce " << ctx.file.name << ": " << (canonical ? "canonical" : "NOT canonical within tol") << "\n"
     << "  J~ = " << fmt_matrix(j0) << "\n"
     << "  max |B~| " << fmt(max_b) << ", max |J~(x) - J~(x0)| " << fmt(max_dj) << " on " << grid.size()
     << " points\n"
     << "  U(" << fmt(grid.front()) << ") = " << fmt_matrix(red.transform.value(grid.front())) << "\n"
     << "  U(" << fmt(grid.back()) << ") = " << fmt_matrix(red.transform.value(grid.back())) << "\n";
  out.text = os.str();
}

void cmd_definite(const Context& ctx, Outcome& out) {
  const SymmetricSystem sys = ctx.file.system();
  const double tol = ctx.tol(1e-8);
  const cd lambda = ctx.lambda(0.0);
  std::vector<Interval> candidates;
  if (ctx.opt.interval) {
    candidates.push_back(Interval::closed(ctx.opt.interval->first, ctx.opt.interval->second));
  } else {
    candidates = default_candidates(sys, kCandidateRadii);
  }
  const DefinitenessReport r = definiteness(sys, candidates, lambda, tol);
  out.report["verdicts"]["definite"] = r.definite;
  ordered_json cands = ordered_json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"interval", interval_json(c.interval)},
                     {"gram_min_sv", num(c.gram_min_sv)},
                     {"gram_norm", num(c.gram_norm)},
                     {"invertible", c.invertible},
                     {"h_integral_min_sv", num(c.h_integral_min_sv)},
                     {"h_integral_invertible", c.h_integral_invertible},
                     {"invertible_at_cross_check", c.invertible_at_cross_check}});
  }
  out.report["evidence"] = {{"lambda", complex_json(r.lambda_used)},
                            {"cross_check_lambda", complex_json(r.cross_check_lambda)},
                            {"tol", num(tol)},
                            {"witness", r.witness_interval ? ordered_json(interval_json(*r.witness_interval))
                                                           : ordered_json(nullptr)},
                            {"min_sv", num(r.min_sv)},
                            {"simple_criterion_passed", r.simple_criterion_passed},
                            {"lambda_disagreement", r.lambda_disagreement},
                            {"candidates", cands}};
  std::ostringstream os;
  os << "definite " << ctx.file.name << ": ";
  if (r.definite) {
    os << "definite, witness " << r.witness_interval->to_string() << ", gram min-singular-value " << fmt(r.min_sv);
  } else {
    os << "not definite, gram min-singular-value " << fmt(r.min_sv);
  }
  os << " (lambda " << fmt(r.lambda_used) << ")\n";
  for (const auto& c : r.candidates) {
    os << "  " << c.interval.to_string() << ": min sv " << fmt(c.gram_min_sv) << ", |gram| " << fmt(c.gram_norm)
       << (c.invertible ? ", invertible" : "") << "\n";
  }
  if (r.simple_criterion_passed) os << "  the integral of H is invertible on a candidate\n";
  if (r.lambda_disagreement) os << "  warning: verdict differs at lambda " << fmt(r.cross_check_lambda) << "\n";
  out.text = os.str();
}

ordered_json endpoint_json(const EndpointClassification& e) {
  ordered_json dirs = ordered_json::array();
  for (const auto& d : e.directions) {
    ordered_json ratios = ordered_json::array(), mass = ordered_json::array(), init = ordered_json::array();
    for (double v : d.ratios) ratios.push_back(num(v));
    for (double v : d.log_window_mass) mass.push_back(num(v));
    for (Eigen::Index k = 0; k < d.initial.size(); ++k) init.push_back(complex_json(d.initial(k)));
    dirs.push_back({{"initial", init},
                    {"verdict", to_string(d.verdict)},
                    {"growth_rate", num(d.growth_rate)},
                    {"log_window_mass", mass},
                    {"ratios", ratios}});
  }
  ordered_json tr = ordered_json::array();
  for (double t : e.truncations_used) tr.push_back(num(t));
  const char* kind = e.kind == EndpointKind::Regular ? "regular" : e.kind == EndpointKind::Infinite ? "infinite"
                                                                                                 : "singular";
  return {{"side", e.right ? "right" : "left"},
          {"kind", kind},
          {"endpoint", num(e.endpoint)},
          {"truncations_used", tr},
          {"integrable_dim", e.integrable.cols()},
          {"possibly_integrable_dim", e.possibly_integrable.cols()},
          {"directions", dirs},
          {"note", e.note}};
}

ordered_json classification_json(const SolutionClassification& c) {
  ordered_json ends = ordered_json::array();
  if (c.left) ends.push_back(endpoint_json(*c.left));
  if (c.right) ends.push_back(endpoint_json(*c.right));
  return {{"lambda", complex_json(c.lambda)}, {"dim_lo", c.dim_lo}, {"dim_hi", c.dim_hi}, {"endpoints", ends}};
}

ordered_json count_json(int lo, int hi) {
  if (lo == hi) return lo;
  return ordered_json{lo, hi};
}

std::string count_text(int lo, int hi) {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

void cmd_deficiency(const Context& ctx, Outcome& out) {
  const SymmetricSystem sys = ctx.file.system();
  const cd lambda = ctx.lambda(cd(0.0, 1.0));
  ClassificationOptions co;
  if (ctx.opt.tol || ctx.file.defaults.tol) co.reltol = ctx.tol(co.reltol);
  const std::vector<double> tr = ctx.truncations();
  const DeficiencyReport r = deficiency_indices(sys, lambda, tr, co);
  out.report["verdicts"] = {{"n_plus", count_json(r.n_plus_lo, r.n_plus_hi)},
                            {"n_minus", count_json(r.n_minus_lo, r.n_minus_hi)},
                            {"exact", r.exact()},
                            {"stable", r.stable()}};
  ordered_json prev = r.previous_level ? ordered_json{r.previous_level->first, r.previous_level->second}
                                       : ordered_json(nullptr);
  ordered_json trj = ordered_json::array();
  for (double t : tr) trj.push_back(num(t));
  out.report["evidence"] = {{"lambda", complex_json(r.lambda)},
                            {"truncations", trj},
                            {"reltol", num(co.reltol)},
                            {"previous_level", prev},
                            {"plus", classification_json(r.plus)},
                            {"minus", classification_json(r.minus)}};
  std::ostringstream os;
  os << "deficiency " << ctx.file.name << ": (" << count_text(r.n_plus_lo, r.n_plus_hi) << ", "
     << count_text(r.n_minus_lo, r.n_minus_hi) << ") at lambda " << fmt(lambda) << " and its conjugate";
  os << (r.stable() ? ", stable under the previous truncation\n"
                    : r.exact() ? ", not confirmed at the previous truncation\n" : ", bounds only\n");
  for (const auto* c : {&r.plus, &r.minus}) {
    os << "  lambda " << fmt(c->lambda) << ": " << count_text(c->dim_lo, c->dim_hi)
       << " square-integrable solution(s)\n";
    for (const auto* e : {&c->left, &c->right}) {
      if (!*e) continue;
      const auto& ep = **e;
      os << "    " << (ep.right ? "right" : "left") << " end " << fmt(ep.endpoint) << ":";
      if (ep.kind == EndpointKind::Regular) os << " regular";
      for (const auto& d : ep.directions) os << " " << to_string(d.verdict);
      if (!ep.note.empty()) os << " (" << ep.note << ")";
      os << "\n";
    }
  }
  out.text = os.str();
}

void cmd_certify(const Context& ctx, Outcome& out) {
  CertifyOptions co;
  co.route = parse_route(ctx.opt.route);
  co.grid = ctx.grid();
  co.tol = ctx.tol(kDefaultTol);
  const Certificate c = ctx.file.has_square_data() ? certify_selfadjoint(ctx.file.square_spec(), co)
                                                   : certify_selfadjoint(ctx.file.system(), co);
  out.report["verdicts"] = {{"certificate", to_string(c.verdict)}, {"route", to_string(c.route)},
                            {"failed_item", c.failed_item}};
  if (c.definite) out.report["verdicts"]["square_system_definite"] = *c.definite;
  auto div_json = [](const DivergenceResult& d) {
    ordered_json ends = ordered_json::array(), part = ordered_json::array(), ratios = ordered_json::array();
    for (double v : d.ends) ends.push_back(num(v));
    for (double v : d.partial) part.push_back(num(v));
    for (double v : d.ratios) ratios.push_back(num(v));
    return ordered_json{{"verdict", to_string(d.verdict)}, {"ends", ends},        {"partial", part},
                        {"ratios", ratios},               {"tail_estimate", num(d.tail_estimate)}, {"note", d.note}};
  };
  ordered_json wm = ordered_json::array();
  for (double v : c.gradient.window_maxima) wm.push_back(num(v));
  out.report["evidence"] = {{"tol", num(co.tol)},
                            {"structure_ok", c.structure_ok},
                            {"structure_failure_x", num(c.structure_failure_x)},
                            {"a_positive_definite", c.a_positive_definite},
                            {"min_eig_v_plus_qh", num(c.min_eig_v_plus_qh)},
                            {"potential_failure_x", num(c.potential_failure_x)},
                            {"gradient", {{"ok", c.gradient.ok},
                                          {"C", num(c.gradient.C)},
                                          {"argmax", num(c.gradient.argmax)},
                                          {"failure_x", num(c.gradient.failure_x)},
                                          {"reason", c.gradient.reason},
                                          {"window_maxima", wm}}},
                            {"toward_plus_inf", div_json(c.toward_plus)},
                            {"toward_minus_inf", div_json(c.toward_minus)},
                            {"notes", c.notes}};
  std::ostringstream os;
  os << "certify " << ctx.file.name << ": ";
  switch (c.verdict) {
    case Verdict::Certified:
      os << "CERTIFIED (" << to_string(c.route) << " route): C=" << fmt(c.gradient.C)
         << ", both tail integrals diverge\n";
      break;
    case Verdict::HypothesesFailed:
      os << "HYPOTHESES FAILED (" << to_string(c.route) << " route) at " << c.failed_item;
      if (c.failed_item == "V >= -qH" && c.potential_failure_x) {
        os << ", x = " << fmt(*c.potential_failure_x, 10) << ", min eig V + qH = " << fmt(c.min_eig_v_plus_qh);
      }
      if (c.failed_item == "divergence") {
        os << ": toward +inf " << to_string(c.toward_plus.verdict) << ", toward -inf "
           << to_string(c.toward_minus.verdict);
      }
      if (c.failed_item == "gradient bound") os << ": " << c.gradient.reason;
      if (c.failed_item == "structure" && c.structure_failure_x) os << ", x = " << fmt(*c.structure_failure_x, 10);
      os << "\n  (the criterion is sufficient only; this is not a proof of non-self-adjointness)\n";
      break;
    case Verdict::Inconclusive:
      os << "INCONCLUSIVE (" << to_string(c.route) << " route): toward +inf " << to_string(c.toward_plus.verdict)
         << ", toward -inf " << to_string(c.toward_minus.verdict) << "\n";
      break;
  }
  os << "  min eig (V + qH) " << fmt(c.min_eig_v_plus_qh) << ", C " << fmt(c.gradient.C) << "\n";
  if (c.definite) os << "  square system definite: " << (*c.definite ? "yes" : "NO") << "\n";
  for (const auto& note : c.notes) os << "  note: " << note << "\n";
  out.text = os.str();
}

void cmd_shubin(const Context& ctx, Outcome& out) {
  const SquareSystemSpec spec = ctx.file.square_spec();
  const double tol = ctx.tol(1e-8);
  const int n = ctx.file.n;
  CoefficientField f1;
  Interval support;
  if (ctx.opt.f1) {
    if (!ctx.opt.support) throw InputError("--f1 needs --support a b");
    f1 = parse_matrix_function(*ctx.opt.f1, n, 1);
    support = Interval::closed(ctx.opt.support->first, ctx.opt.support->second);
  } else {
    const double m = ctx.opt.support ? 0.5 * (ctx.opt.support->first + ctx.opt.support->second) : 0.0;
    const double w = ctx.opt.support ? 0.5 * (ctx.opt.support->second - ctx.opt.support->first) : 1.0;
    f1 = polynomial_bump(std::vector<std::vector<double>>(n, {1.0}), m, w, 4);
    support = Interval::closed(m - w, m + w);
  }
  const ShubinResult r = shubin_verify(spec, f1, support, tol);
  out.report["verdicts"]["satisfied"] = r.satisfied;
  out.report["evidence"] = {{"f1", f1.to_string()},        {"support", interval_json(support)},
                            {"lhs", num(r.lhs)},           {"rhs", num(r.rhs)},
                            {"C", num(r.C)},               {"f_norm", num(r.f_norm)},
                            {"g_norm", num(r.g_norm)},     {"range_residual", num(r.range_residual)},
                            {"tol", num(tol)}};
  std::ostringstream os;
  os << "shubin " << ctx.file.name << ": " << (r.satisfied ? "satisfied" : "VIOLATED") << "\n"
     << "  |q^{-1/2} f2|_A^2 = " << fmt(r.lhs, 10) << "  <=  2((1 + 2C^2)|f|^2 + |f||g|) = " << fmt(r.rhs, 10)
     << "\n  C = " << fmt(r.C) << ", |f| = " << fmt(r.f_norm) << ", |g| = " << fmt(r.g_norm) << "\n";
  out.text = os.str();
}

void emit_system(const Context& ctx, Outcome& out, const SymmetricSystem& s, const std::string& suffix) {
  const double tol = ctx.tol(kDefaultTol);
  const ValidationReport r = validate(s, s.default_grid(ctx.grid()), tol);
  const std::string name = (ctx.file.name.empty() ? std::string("system") : ctx.file.name) + suffix;
  const std::string text = system_text(name, s.n(), s.interval(), ctx.file.x0, s);
  out.report["verdicts"]["structure"] = r.pass ? "pass" : "fail";
  out.report["evidence"] = {{"n", s.n()},
                            {"interval", interval_json(s.interval())},
                            {"J", s.J().symbolic()->to_string()},
                            {"B", s.B().symbolic()->to_string()},
                            {"H", s.H().symbolic()->to_string()},
                            {"validation", validation_json(r, false)},
                            {"system_file", text}};
  out.text = text + "\n# validate: " + (r.pass ? "PASS" : "FAIL") + "\n";
}

void cmd_embed_sl(const Context& ctx, Outcome& out) {
  if (!ctx.file.A) throw InputError("embed-sl needs an [A] section");
  const int n = ctx.file.n;
  const SymmetricSystem s = sl_embed(*ctx.file.A, ctx.file.V ? *ctx.file.V : CoefficientField::zero(n, n),
                                     ctx.file.H, ctx.file.interval, ctx.tol(kDefaultTol));
  emit_system(ctx, out, s, "-embedded");
}

void cmd_square(const Context& ctx, Outcome& out) {
  const SymmetricSystem s = square_system(ctx.file.square_spec(), ctx.tol(kDefaultTol));
  emit_system(ctx, out, s, "-square");
}

std::string flags_key(const Options& o) {
  std::ostringstream os;
  os << std::setprecision(17) << "command=" << o.command << ";route=" << o.route;
  if (o.tol) os << ";tol=" << *o.tol;
  if (o.grid) os << ";grid=" << *o.grid;
  if (o.truncations) {
    os << ";truncations=";
    for (double t : *o.truncations) os << t << ",";
  }
  if (o.lambda) os << ";lambda=" << *o.lambda;
  if (o.interval) os << ";interval=" << o.interval->first << "," << o.interval->second;
  if (o.f1) os << ";f1=" << *o.f1;
  if (o.support) os << ";support=" << o.support->first << "," << o.support->second;
  return os.str();
}

ordered_json report_header(const Options& o, const std::string& source) {
  ordered_json r;
  r["schema"] = 1;
  r["tool_version"] = SYMSYS_VERSION;
  r["command"] = o.command;
  r["inputs_digest"] = inputs_digest(o, source);
  r["verdicts"] = ordered_json::object();
  r["evidence"] = ordered_json::object();
  return r;
}

}  // namespace

std::string inputs_digest(const Options& options, const std::string& source) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  feed(source);
  feed(std::string(1, '\0'));
  feed(flags_key(options));
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Outcome run(const Options& options, const SystemFile& file) {
  Outcome out;
  out.report = report_header(options, file.source);
  out.report["evidence"] = ordered_json::object();
  const Context ctx{options, file};
  const std::string& c = options.command;
  if (c == "validate") cmd_validate(ctx, out);
  else if (c == "reduce") cmd_reduce(ctx, out);
  else if (c == "definite") cmd_definite(ctx, out);
  else if (c == "deficiency") cmd_deficiency(ctx, out);
  else if (c == "certify") cmd_certify(ctx, out);
  else if (c == "shubin") cmd_shubin(ctx, out);
  else if (c == "embed-sl") cmd_embed_sl(ctx, out);
  else if (c == "square") cmd_square(ctx, out);
  else throw InputError("unknown command '" + c + "'");
  return out;
}

Outcome run_file(const Options& options) {
  std::string source;
  auto failure = [&](int code, const char* kind, const std::string& what) {
    Outcome out;
    out.exit_code = code;
    out.report = report_header(options, source);
    out.report["verdicts"]["error"] = kind;
    out.report["evidence"]["message"] = what;
    out.text = std::string(kind) + " error: " + what + "\n";
    return out;
  };
  try {
    const SystemFile file = load_system_file(options.file);
    source = file.source;
    return run(options, file);
  } catch (const EvaluationError& e) {
    std::string what = e.what();
    if (e.row() >= 0) what += " (entry " + std::to_string(e.row() + 1) + "," + std::to_string(e.col() + 1) + ")";
    return failure(kExitNumerical, "numerical", what);
  } catch (const NumericalError& e) {
    return failure(kExitNumerical, "numerical", e.what());
  } catch (const InputError& e) {
    return failure(kExitInput, "input", e.what());
  } catch (const std::invalid_argument& e) {
    return failure(kExitInput, "input", e.what());
  }
}

}  // namespace symsys::cli

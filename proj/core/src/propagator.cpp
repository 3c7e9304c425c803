#include "symsys/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "symsys/errors.hpp"

namespace symsys {

namespace {

// Dormand-Prince 8(5,3) tableau.
constexpr std::array<double, 13> kC = {0.0,
                                       0.0,
                                       0.526001519587677318785587544488e-01,
                                       0.789002279381515978178381316732e-01,
                                       0.118350341907227396726757197510e+00,
                                       0.281649658092772603273242802490e+00,
                                       0.333333333333333333333333333333e+00,
                                       0.25e+00,
                                       0.307692307692307692307692307692e+00,
                                       0.651282051282051282051282051282e+00,
                                       0.6e+00,
                                       0.857142857142857142857142857142e+00,
                                       1.0};

// kA[s] lists (stage, coefficient) pairs for stage s (1-based stages 2..12).
struct Term {
  int stage;
  double a;
};
const std::vector<std::vector<Term>> kA = {
    {},
    {},
    {{1, 5.26001519587677318785587544488e-2}},
    {{1, 1.97250569845378994544595329183e-2}, {2, 5.91751709536136983633785987549e-2}},
    {{1, 2.95875854768068491816892993775e-2}, {3, 8.87627564304205475450678981324e-2}},
    {{1, 2.41365134159266685502369798665e-1}, {3, -8.84549479328286085344864962717e-1},
     {4, 9.24834003261792003115737966543e-1}},
    {{1, 3.7037037037037037037037037037e-2}, {4, 1.70828608729473871279604482173e-1},
     {5, 1.25467687566822425016691814123e-1}},
    {{1, 3.7109375e-2}, {4, 1.70252211019544039314978060272e-1}, {5, 6.02165389804559606850219397283e-2},
     {6, -1.7578125e-2}},
    {{1, 3.70920001185047927108779319836e-2}, {4, 1.70383925712239993810214054705e-1},
     {5, 1.07262030446373284651809199168e-1}, {6, -1.53194377486244017527936158236e-2},
     {7, 8.27378916381402288758473766002e-3}},
    {{1, 6.24110958716075717114429577812e-1}, {4, -3.36089262944694129406857109825e0},
     {5, -8.68219346841726006818189891453e-1}, {6, 2.75920996994467083049415600797e1},
     {7, 2.01540675504778934086186788979e1}, {8, -4.34898841810699588477366255144e1}},
    {{1, 4.77662536438264365890433908527e-1}, {4, -2.48811461997166764192642586468e0},
     {5, -5.90290826836842996371446475743e-1}, {6, 2.12300514481811942347288949897e1},
     {7, 1.52792336328824235832596922938e1}, {8, -3.32882109689848629194453265587e1},
     {9, -2.03312017085086261358222928593e-2}},
    {{1, -9.3714243008598732571704021658e-1}, {4, 5.18637242884406370830023853209e0},
     {5, 1.09143734899672957818500254654e0}, {6, -8.14978701074692612513997267357e0},
     {7, -1.85200656599969598641566180701e1}, {8, 2.27394870993505042818970056734e1},
     {9, 2.49360555267965238987089396762e0}, {10, -3.0467644718982195003823669022e0}},
    {{1, 2.27331014751653820792359768449e0}, {4, -1.05344954667372501984066689879e1},
     {5, -2.00087205822486249909675718444e0}, {6, -1.79589318631187989172765950534e1},
     {7, 2.79488845294199600508499808837e1}, {8, -2.85899827713502369474065508674e0},
     {9, -8.87285693353062954433549289258e0}, {10, 1.23605671757943030647266201528e1},
     {11, 6.43392746015763530355970484046e-1}},
};

const std::vector<Term> kB = {{1, 5.42937341165687622380535766363e-2},  {6, 4.45031289275240888144113950566e0},
                              {7, 1.89151789931450038304281599044e0},   {8, -5.8012039600105847814672114227e0},
                              {9, 3.1116436695781989440891606237e-1},   {10, -1.52160949662516078556178806805e-1},
                              {11, 2.01365400804030348374776537501e-1}, {12, 4.47106157277725905176885569043e-2}};

// Fifth-order error weights; the third-order estimate is b - bhh.
const std::vector<Term> kE5 = {{1, 0.1312004499419488073250102996e-01},  {6, -0.1225156446376204440720569753e+01},
                               {7, -0.4957589496572501915214079952e+00}, {8, 0.1664377182454986536961530415e+01},
                               {9, -0.3503288487499736816886487290e+00}, {10, 0.3341791187130174790297318841e+00},
                               {11, 0.8192320648511571246570742613e-01}, {12, -0.2235530786388629525884427845e-01}};
const std::vector<Term> kBhh = {{1, 0.244094488188976377952755905512e+00},
                                {9, 0.733846688281611857341361741547e+00},
                                {12, 0.220588235294117647058823529412e-01}};

constexpr double kRescaleAbove = 1e50;
constexpr int kMaxSteps = 2'000'000;

struct Derivs {
  CMatrix dy;
  CMatrix dg;
};

class Rhs {
 public:
  Rhs(const SymmetricSystem& s, cd lambda) : s_(s), lambda_(lambda) {}

  Derivs operator()(double x, double locator, const CMatrix& y) const {
    const CMatrix j = s_.J().value(x, locator);
    const CMatrix h = s_.H().value(x, locator);
    const CMatrix b = s_.B().value(x, locator);
    Eigen::PartialPivLU<CMatrix> lu(j);
    const double jn = j.cwiseAbs().maxCoeff();
    if (!(std::abs(lu.determinant()) > 1e-300) || !(lu.rcond() > 1e-14) || jn == 0.0) {
      std::ostringstream os;
      os << "J is singular at x = " << x;
      throw NumericalError(os.str());
    }
    Derivs d;
    d.dy = lu.solve((lambda_ * h - b) * y);
    d.dg = y.adjoint() * h * y;
    return d;
  }

 private:
  const SymmetricSystem& s_;
  cd lambda_;
};

std::vector<double> stops_between(const SymmetricSystem& s, double a, double b) {
  std::vector<double> out;
  for (double p : s.breakpoints()) {
    if ((a < p && p < b) || (b < p && p < a)) out.push_back(p);
  }
  if (b < a) std::reverse(out.begin(), out.end());
  out.push_back(b);
  return out;
}

void raise_underflow(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "step size underflow at x = " << x;
  throw NumericalError(os.str());
}

}  // namespace

SegmentResult integrate_segment(const SymmetricSystem& system, cd lambda, double a, const CMatrix& ya, double b,
                                double reltol, std::vector<StepRecord>* trace) {
  const Rhs rhs(system, lambda);
  const int m = static_cast<int>(ya.cols());
  SegmentResult out;
  out.values = ya;
  out.gram = CMatrix::Zero(m, m);
  if (a == b) return out;

  const double dir = b > a ? 1.0 : -1.0;
  const double rtol = std::max(reltol, 1e-15);
  constexpr double tiny = 1e-300;

  CMatrix y = ya;
  CMatrix g = CMatrix::Zero(m, m);
  double log_scale = 0.0;
  double x = a;
  double h = 0.0;

  std::array<CMatrix, 13> ky;
  std::array<CMatrix, 13> kg;

  for (const double stop : stops_between(system, a, b)) {
    const double locator = 0.5 * (x + stop);
    const double span = std::abs(stop - x);
    {
      // Initial step from the size of the derivative.
      const Derivs d0 = rhs(x, locator, y);
      const double f0 = d0.dy.norm();
      const double y0 = std::max(y.norm(), 1e-300);
      double guess = f0 > 0.0 ? 0.01 * y0 / f0 : span;
      guess = std::min(guess * std::pow(rtol / 1e-10, 0.125), span);
      if (h == 0.0 || std::abs(h) > span) h = dir * std::max(guess, span * 1e-6);
      else h = dir * std::min(std::abs(h), span);
    }
    bool last = false;
    while (!last) {
      if (out.steps > kMaxSteps) raise_underflow(x);
      if (std::abs(stop - x) <= std::abs(h) * (1.0 + 1e-12)) {
        h = stop - x;
        last = true;
      }
      if (std::abs(h) < 1e-13 * std::max(1.0, std::abs(x))) raise_underflow(x);

      for (int s = 1; s <= 12; ++s) {
        CMatrix ys = y;
        for (const Term& t : kA[s]) ys += (h * t.a) * ky[t.stage];
        const double xs = s == 12 ? x + h : x + kC[s] * h;
        Derivs d = rhs(xs, locator, ys);
        ky[s] = std::move(d.dy);
        kg[s] = std::move(d.dg);
      }
      CMatrix incy = CMatrix::Zero(y.rows(), m);
      CMatrix incg = CMatrix::Zero(m, m);
      CMatrix e5y = incy;
      CMatrix e5g = incg;
      CMatrix e3y = incy;
      CMatrix e3g = incg;
      for (const Term& t : kB) {
        incy += t.a * ky[t.stage];
        incg += t.a * kg[t.stage];
      }
      for (const Term& t : kE5) {
        e5y += t.a * ky[t.stage];
        e5g += t.a * kg[t.stage];
      }
      e3y = incy;
      e3g = incg;
      for (const Term& t : kBhh) {
        e3y -= t.a * ky[t.stage];
        e3g -= t.a * kg[t.stage];
      }
      const CMatrix ynew = y + h * incy;
      const CMatrix gnew = g + (dir * h) * incg;

      // Scaled error norms: Y column by column, G against its largest entry.
      double err5 = 0.0;
      double err3 = 0.0;
      int count = 0;
      for (int j = 0; j < m; ++j) {
        const double sc = tiny + rtol * std::max(y.col(j).cwiseAbs().maxCoeff(), ynew.col(j).cwiseAbs().maxCoeff());
        err5 += (e5y.col(j) / sc).squaredNorm();
        err3 += (e3y.col(j) / sc).squaredNorm();
        count += static_cast<int>(y.rows());
      }
      const double gscale = std::max(g.cwiseAbs().maxCoeff(), gnew.cwiseAbs().maxCoeff());
      if (gscale > 0.0) {
        const double sc = rtol * gscale;
        err5 += (e5g / sc).squaredNorm();
        err3 += (e3g / sc).squaredNorm();
        count += m * m;
      }
      const double deno = err5 + 0.01 * err3;
      double err = deno > 0.0 ? std::abs(h) * err5 / std::sqrt(deno * count) : 0.0;
      if (!std::isfinite(err)) err = 1e10;

      const double fac = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.125), 0.333, 6.0) : 6.0;
      if (err <= 1.0) {
        x = last ? stop : x + h;
        y = ynew;
        g = gnew;
        ++out.steps;
        const double big = y.cwiseAbs().maxCoeff();
        if (big > kRescaleAbove) {
          const double s = 1.0 / big;
          y *= s;
          g *= s * s;
          log_scale += std::log(big);
        }
        if (trace) trace->push_back({x, y, g, log_scale});
        if (!last) h *= fac;
      } else {
        h *= std::max(fac, 0.2);
        last = false;
      }
    }
  }
  out.values = std::move(y);
  out.gram = std::move(g);
  out.log_scale = log_scale;
  return out;
}

FundamentalSolution propagate(const SymmetricSystem& system, cd lambda, const std::vector<double>& targets,
                              double reltol) {
  const Interval& iv = system.interval();
  for (double t : targets) {
    if (!iv.contains(t)) {
      std::ostringstream os;
      os << "propagation target " << t << " lies outside " << iv.to_string();
      throw InputError(os.str());
    }
  }
  FundamentalSolution fs;
  fs.system_ = std::make_shared<const SymmetricSystem>(system);
  fs.lambda_ = lambda;
  fs.reltol_ = reltol;
  const double x0 = system.x0();
  std::vector<double> grid = targets;
  grid.push_back(x0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  fs.grid_ = grid;

  const int n = system.n();
  const CMatrix id = CMatrix::Identity(n, n);
  std::vector<StepRecord> right;
  std::vector<StepRecord> left;

  // Each side integrates through its targets in order so every target is a step end.
  auto run_side = [&](std::vector<double> stops, std::vector<StepRecord>& records, double sign) {
    CMatrix y = id;
    CMatrix g = CMatrix::Zero(n, n);
    double xcur = x0;
    double scale = 0.0;
    for (double t : stops) {
      std::vector<StepRecord> trace;
      const SegmentResult seg = integrate_segment(system, lambda, xcur, y, t, reltol, &trace);
      fs.steps_ += seg.steps;
      for (StepRecord& r : trace) {
        const double s = std::exp(scale + r.log_scale);
        CMatrix yr = s * r.values;
        CMatrix gr = g + sign * (std::exp(2.0 * scale + 2.0 * r.log_scale) * r.gram);
        if (!yr.allFinite() || !gr.allFinite()) {
          std::ostringstream os;
          os << "fundamental solution overflows near x = " << r.x;
          throw NumericalError(os.str());
        }
        records.push_back({r.x, std::move(yr), std::move(gr), 0.0});
      }
      y = records.empty() ? id : records.back().values;
      g = records.empty() ? g : records.back().gram;
      xcur = t;
      if (!records.empty()) records.back().x = t;
    }
  };
  std::vector<double> up;
  std::vector<double> down;
  for (double t : grid) {
    if (t > x0) up.push_back(t);
    if (t < x0) down.push_back(t);
  }
  std::reverse(down.begin(), down.end());
  run_side(up, right, 1.0);
  run_side(down, left, -1.0);

  std::reverse(left.begin(), left.end());
  fs.dense_ = std::move(left);
  fs.dense_.push_back({x0, id, CMatrix::Zero(n, n), 0.0});
  fs.dense_.insert(fs.dense_.end(), right.begin(), right.end());

  for (double t : grid) {
    const StepRecord r = fs.state_at(t);
    fs.values_.push_back(r.values);
    fs.gram_.push_back(r.gram);
  }
  return fs;
}

StepRecord FundamentalSolution::state_at(double x) const {
  if (x < grid_.front() || x > grid_.back()) {
    std::ostringstream os;
    os << "x = " << x << " lies outside the propagated range [" << grid_.front() << ", " << grid_.back() << "]";
    throw InputError(os.str());
  }
  const double x0 = system_->x0();
  // Nearest record between x0 and x (inclusive), then integrate the remainder.
  const StepRecord* from = nullptr;
  if (x >= x0) {
    auto it = std::upper_bound(dense_.begin(), dense_.end(), x, [](double v, const StepRecord& r) { return v < r.x; });
    from = &*(it - 1);
  } else {
    auto it = std::lower_bound(dense_.begin(), dense_.end(), x, [](const StepRecord& r, double v) { return r.x < v; });
    from = &*it;
  }
  if (from->x == x) return *from;
  const SegmentResult seg = integrate_segment(*system_, lambda_, from->x, from->values, x, reltol_);
  const double s = std::exp(seg.log_scale);
  const double sign = x >= x0 ? 1.0 : -1.0;
  return {x, s * seg.values, from->gram + sign * (s * s) * seg.gram, 0.0};
}

CMatrix FundamentalSolution::value_at(double x) const { return state_at(x).values; }
CMatrix FundamentalSolution::gram_at(double x) const { return state_at(x).gram; }

CMatrix FundamentalSolution::derivative_at(double x) const {
  const Rhs rhs(*system_, lambda_);
  return rhs(x, x, value_at(x)).dy;
}

CMatrix gram_matrix(const FundamentalSolution& fs, const Interval& i0) {
  const double a = i0.left;
  const double b = i0.right;
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) throw InputError("Gram interval must be compact");
  if (a < fs.grid().front() || b > fs.grid().back()) {
    std::ostringstream os;
    os << "Gram interval " << i0.to_string() << " lies outside the propagated range [" << fs.grid().front() << ", "
       << fs.grid().back() << "]";
    throw InputError(os.str());
  }
  const CMatrix diff = fs.gram_at(b) - fs.gram_at(a);
  const SegmentResult direct = integrate_segment(fs.system(), fs.lambda(), a, fs.value_at(a), b, fs.reltol() / 10);
  const double s = std::exp(direct.log_scale);
  const CMatrix refined = (s * s) * direct.gram;
  CMatrix out = (refined - diff).norm() > fs.reltol() * std::max(refined.norm(), 1e-300) ? refined : diff;
  return 0.5 * (out + out.adjoint());
}

double h_norm_sq(const FundamentalSolution& fs, const CVector& c, const Interval& i0) {
  if (c.size() != fs.system().n()) throw InputError("coefficient vector has the wrong length");
  const CMatrix g = gram_matrix(fs, i0);
  return std::max(0.0, (c.adjoint() * g * c)(0, 0).real());
}

}  // namespace symsys

#include "symsys/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace symsys {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kGauss = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  CMatrix value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod(const std::function<CMatrix(double)>& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  CMatrix centre = f(c);
  CMatrix k = kKronrod[7] * centre;
  CMatrix g = kGauss[3] * centre;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kNodes[j];
    const CMatrix s = f(c - dx) + f(c + dx);
    k += kKronrod[j] * s;
    if (j % 2 == 1) g += kGauss[j / 2] * s;
  }
  evals += 15;
  k *= h;
  g *= h;
  return {a, b, k, (k - g).norm()};
}

}  // namespace

QuadratureResult integrate_matrix(const std::function<CMatrix(double)>& f, double a, double b, double reltol,
                                  double abstol, int max_intervals) {
  QuadratureResult out;
  if (a == b) {
    out.value = f(a) * 0.0;
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  Panel first = kronrod(f, a, b, out.evaluations);
  CMatrix total = first.value;
  double err = first.error;
  heap.push(std::move(first));
  int intervals = 1;
  while (err > std::max(abstol, reltol * total.norm()) && intervals < max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      heap.push(std::move(worst));
      break;
    }
    Panel left = kronrod(f, worst.a, mid, out.evaluations);
    Panel right = kronrod(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++intervals;
  }
  // Re-sum to remove drift from the running updates.
  total.setZero();
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = std::move(total);
  out.error = err;
  out.converged = err <= std::max(abstol, reltol * out.value.norm());
  return out;
}

double integrate_real(const std::function<double(double)>& f, double a, double b, double reltol, double abstol,
                      double* error) {
  const auto wrapped = [&](double x) {
    CMatrix m(1, 1);
    m(0, 0) = f(x);
    return m;
  };
  const QuadratureResult r = integrate_matrix(wrapped, a, b, reltol, abstol);
  if (error) *error = r.error;
  return r.value(0, 0).real();
}

}  // namespace symsys

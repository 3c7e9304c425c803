#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symsys/analysis.hpp"
#include "symsys/coefficient_field.hpp"
#include "symsys/linalg.hpp"
#include "symsys/matrix_function.hpp"
#include "symsys/system.hpp"

namespace symsys {

/// Propagation speed c(x). The square form is |A^{-1/2} J H^{-1/2}|, the Hamiltonian
/// form |H^{-1/2} J H^{-1/2}|; both are +inf where a root does not exist.
class SpeedFunction {
 public:
  enum class Form { Square, Hamiltonian };

  static SpeedFunction square(MatrixFunction A, MatrixFunction J, MatrixFunction H);
  static SpeedFunction hamiltonian(MatrixFunction J, MatrixFunction H);

  Form form() const { return form_; }
  double operator()(double x, double tol = kDefaultTol) const;
  /// 1 / c(x), with 1 / inf = 0.
  double reciprocal(double x, double tol = kDefaultTol) const;

 private:
  Form form_ = Form::Hamiltonian;
  MatrixFunction A_;
  MatrixFunction J_;
  MatrixFunction H_;
};

double speed(const SpeedFunction& c, double x, double tol = kDefaultTol);

enum class Divergence { Diverges, Converges, Unknown };
const char* to_string(Divergence d);

/// Windows toward the endpoint: [o, o+s], then [o + s 2^k, o + s 2^{k+1}] for
/// k < doublings (toward a finite endpoint the distance to it is halved instead).
struct DivergenceSchedule {
  double origin = 0.0;
  double first = 1.0;
  int doublings = 20;
  int ratios = 4;
  double diverge_ratio = 1.0 - 1e-3;
  double converge_ratio = 0.9;
  /// Extrapolated tail must be at most this fraction of the partial integral.
  double tail_tol = 1e-2;
  double reltol = 1e-10;
};

struct DivergenceResult {
  Divergence verdict = Divergence::Unknown;
  std::vector<double> ends;      // window right ends (in the direction of travel)
  std::vector<double> partial;   // integral from the origin to each end
  std::vector<double> ratios;    // successive window increments
  double tail_estimate = 0.0;
  std::string note;
};

/// Decide whether the integral of a nonnegative integrand from the origin toward
/// `endpoint` (+inf, -inf or finite) diverges. Unknown is the safe answer.
DivergenceResult divergence_test(const std::function<double(double)>& integrand, double endpoint,
                                 const DivergenceSchedule& schedule = {});

/// Cutoff functions chi_n(x) = chi(F(x) / n), F(x) = integral of f from the origin to x,
/// with the profile chi = 1 on [-1/2, 1/2], a quintic descent to 0 at +-5/2 and
/// |chi'| <= 15/16. The cumulative integral is cached on a lattice.
class CutoffSequence {
 public:
  static constexpr double kPlateau = 0.5;
  static constexpr double kSupport = 2.5;

  CutoffSequence(std::function<double(double)> f, Interval domain = Interval::real_line(), double origin = 0.0,
                 double lattice_step = 0.25);

  static double profile(double t);
  static double profile_derivative(double t);

  /// F(x). Throws InputError if f is negative where it is sampled, DomainError outside the domain.
  double cumulative(double x) const;
  double f(double x) const;
  double value(int n, double x) const;
  double derivative(int n, double x) const;

  /// First point beyond which chi_n vanishes on the given side, searched up to distance
  /// `limit` from the origin; nullopt when the support does not end there.
  std::optional<double> support_edge(int n, bool right, double limit = 1e6) const;

  const Interval& domain() const { return domain_; }
  double origin() const { return origin_; }

 private:
  struct Cache;
  std::function<double(double)> f_;
  Interval domain_;
  double origin_;
  double step_;
  std::shared_ptr<Cache> cache_;
};

/// One member chi_n of a sequence.
struct CutoffFunction {
  std::shared_ptr<const CutoffSequence> sequence;
  int n = 1;
  double operator()(double x) const { return sequence->value(n, x); }
  double derivative(double x) const { return sequence->derivative(n, x); }
};

CutoffFunction cutoff_sequence(std::shared_ptr<const CutoffSequence> sequence, int n);

struct GradientBound {
  bool ok = false;
  double C = 0.0;
  double argmax = 0.0;
  std::optional<double> failure_x;
  std::string reason;
  /// Maxima over the grid and its dilations by 2 and 4 (when they fit the domain).
  std::vector<double> window_maxima;
};

/// C = sup c(x) |d/dx q^{-1/2}(x)| over the grid (refined near the maximiser). Fails where
/// c = inf but the derivative is nonzero, or when the maximum keeps growing as the grid is
/// dilated. Throws InputError when q < 1 on the grid.
GradientBound check_gradient_bound(const CoefficientField& q, const SpeedFunction& c, const std::vector<double>& grid,
                                   double tol = kDefaultTol);

enum class Route { Auto, Weighted, Hamiltonian, SturmLiouville };
enum class Verdict { Certified, HypothesesFailed, Inconclusive };
const char* to_string(Route r);
const char* to_string(Verdict v);
/// "auto", "weighted", "hamiltonian", "sturm-liouville"; throws InputError otherwise.
Route parse_route(const std::string& name);

struct CertifyOptions {
  Route route = Route::Auto;
  GridOptions grid;
  DivergenceSchedule schedule;
  double tol = kDefaultTol;
};

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  Route route = Route::Auto;
  /// The first failing hypothesis: "structure", "A positive definite", "V >= -qH",
  /// "gradient bound", "divergence"; empty when none failed.
  std::string failed_item;
  bool structure_ok = false;
  std::optional<double> structure_failure_x;
  bool a_positive_definite = true;
  double min_eig_v_plus_qh = 0.0;
  std::optional<double> potential_failure_x;
  GradientBound gradient;
  DivergenceResult toward_plus;
  DivergenceResult toward_minus;
  /// For the weighted route when certified: result of the definiteness test on the
  /// square system, which the criterion predicts to be definite.
  std::optional<bool> definite;
  std::vector<std::string> notes;
};

/// Bare system: the Hamiltonian route (V = 0, q = 1, A = H).
Certificate certify_selfadjoint(const SymmetricSystem& system, const CertifyOptions& options = {});

/// Square system spec: auto picks the Sturm-Liouville route when J = iI and B = 0, the
/// weighted route otherwise. Throws InputError unless the interval is the real line.
Certificate certify_selfadjoint(const SquareSystemSpec& spec, const CertifyOptions& options = {});

struct ShubinResult {
  double lhs = 0.0;  // |q^{-1/2} f2|_A^2
  double rhs = 0.0;  // 2((1 + 2C^2)|f|^2 + |f||g|)
  double C = 0.0;
  double f_norm = 0.0;
  double g_norm = 0.0;
  double range_residual = 0.0;
  bool satisfied = false;
};

/// Build f2 = A^{-1}(J f1' + B f1), g1 = H^+(J f2' + B f2 + V f1) for a compactly supported
/// f1 (n x 1 field, zero outside `support`) and compare both sides of the estimate.
/// Throws NumericalError if A is singular on the support or the right-hand side leaves the
/// range of H by more than tol.
ShubinResult shubin_verify(const SquareSystemSpec& spec, const CoefficientField& f1, const Interval& support,
                           double tol = 1e-8, std::optional<double> C = std::nullopt);

/// p(x) (1 - ((x - m)/w)^2)^k on [m - w, m + w), zero elsewhere; p given by its coefficients
/// (constant term first), one polynomial per component.
CoefficientField polynomial_bump(const std::vector<std::vector<double>>& coefficients, double m, double w, int k);

}  // namespace symsys

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/linalg.hpp"
#include "symsys/system.hpp"

namespace symsys {

struct CandidateResult {
  Interval interval;
  double gram_min_sv = 0.0;
  double gram_norm = 0.0;
  bool invertible = false;
  /// Smallest singular value and norm of the integral of H over the interval.
  double h_integral_min_sv = 0.0;
  double h_integral_norm = 0.0;
  bool h_integral_invertible = false;
  /// Verdict repeated at the cross-check lambda.
  bool invertible_at_cross_check = false;
};

struct DefinitenessReport {
  bool definite = false;
  std::optional<Interval> witness_interval;
  cd lambda_used;
  cd cross_check_lambda;
  /// Smallest singular value of the Gram matrix on the witness (or the last candidate).
  double min_sv = 0.0;
  bool simple_criterion_passed = false;
  /// The two lambdas disagree on some candidate; invertibility is lambda-independent,
  /// so this points at a numerical problem.
  bool lambda_disagreement = false;
  std::vector<CandidateResult> candidates;
};

/// A Gram matrix counts as invertible when its smallest singular value exceeds
/// tol * |G|. The cross-check runs at lambda + (0.5 + 0.5i).
DefinitenessReport definiteness(const SymmetricSystem& system, const std::vector<Interval>& candidates, cd lambda,
                                double tol = 1e-8, double reltol = 1e-11);

/// Closed intervals [x0 - t, x0 + t] clipped to the system interval (a closed finite
/// end is kept, an open end is pulled in by 1e-9 of the length).
std::vector<Interval> default_candidates(const SymmetricSystem& system, const std::vector<double>& radii);

enum class Integrability { Integrable, Divergent, Inconclusive };
const char* to_string(Integrability v);

/// One solution direction near an endpoint: the initial value at x0, the H-mass of the
/// solution over successive truncation windows, and the verdict.
struct DirectionVerdict {
  CVector initial;
  Integrability verdict = Integrability::Inconclusive;
  /// Natural log of the H-mass per window (-inf for a window with zero mass).
  std::vector<double> log_window_mass;
  /// Successive mass ratios (window k+1 over window k).
  std::vector<double> ratios;
  /// Least-squares slope of log(mass / width) against the window midpoint.
  double growth_rate = 0.0;
};

enum class EndpointKind { Regular, Infinite, SingularFinite };

struct EndpointClassification {
  bool right = true;
  EndpointKind kind = EndpointKind::Regular;
  double endpoint = 0.0;
  /// Window ends actually used (the schedule is cut once Phi becomes too ill conditioned).
  std::vector<double> truncations_used;
  std::vector<DirectionVerdict> directions;
  /// Orthonormal bases (columns, initial values at x0) of the integrable directions and of
  /// the integrable-or-inconclusive directions.
  CMatrix integrable;
  CMatrix possibly_integrable;
  std::string note;
};

struct SolutionClassification {
  cd lambda;
  std::optional<EndpointClassification> left;
  std::optional<EndpointClassification> right;
  /// Bounds on the dimension of the H-square-integrable solution space.
  int dim_lo = 0;
  int dim_hi = 0;
  bool exact() const { return dim_lo == dim_hi; }
};

struct ClassificationOptions {
  double reltol = 1e-11;
  /// Cut the schedule once reltol * cond(Phi) exceeds this.
  double conditioning_limit = 1e-3;
  double decay_ratio = 0.9;
  double growth_ratio = 1.0;
  int ratios_used = 3;
  double angle_threshold = 1e-6;  // principal cosine >= 1 - threshold counts as shared
};

/// Truncations are distances from x0 toward each singular endpoint (increasing).
/// Directions are the Gram eigenvectors over the whole schedule; the verdict reads the
/// mass ratios of all windows but the last, so at least five truncations are needed.
/// Closed finite endpoints are regular; open finite endpoints are regular when the
/// coefficients can be evaluated there and inconclusive otherwise.
SolutionClassification classify_solutions(const SymmetricSystem& system, cd lambda,
                                          const std::vector<double>& truncations,
                                          const ClassificationOptions& options = {});

struct DeficiencyReport {
  cd lambda;
  SolutionClassification plus;
  SolutionClassification minus;
  int n_plus_lo = 0;
  int n_plus_hi = 0;
  int n_minus_lo = 0;
  int n_minus_hi = 0;
  bool exact() const { return n_plus_lo == n_plus_hi && n_minus_lo == n_minus_hi; }
  /// Indices with the last truncation dropped, when at least five truncations exist.
  std::optional<std::pair<int, int>> previous_level;
  bool stable() const {
    return exact() && previous_level && previous_level->first == n_plus_lo && previous_level->second == n_minus_lo;
  }
};

/// Formal deficiency indices at (lambda, conj(lambda)), Im lambda > 0.
DeficiencyReport deficiency_indices(const SymmetricSystem& system, cd lambda, const std::vector<double>& truncations,
                                    const ClassificationOptions& options = {});

struct LambdaInvariance {
  std::vector<cd> lambdas;
  std::vector<int> dims_lo;
  std::vector<int> dims_hi;
  bool constant = false;
  /// The system is definite or the interval is half-closed.
  bool hypothesis_met = false;
  bool definite = false;
};

LambdaInvariance lambda_invariance(const SymmetricSystem& system, const std::vector<cd>& lambdas,
                                   const std::vector<double>& truncations, const ClassificationOptions& options = {});

}  // namespace symsys

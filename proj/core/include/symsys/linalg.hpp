#pragma once

#include <complex>

#include <Eigen/Dense>

namespace symsys {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;

/// Largest singular value (spectral norm). The empty matrix has norm 0.
double operator_norm(const CMatrix& m);

/// Smallest singular value of a square matrix; throws std::invalid_argument otherwise.
double min_singular_value(const CMatrix& m);

/// All singular values, descending.
Eigen::VectorXd singular_values(const CMatrix& m);

struct HermitianCheck {
  bool hermitian = false;
  bool psd = false;
  /// Smallest eigenvalue of the Hermitian part (M + M*)/2.
  double min_eig = 0.0;
};

/// hermitian iff |M - M*| <= tol (1 + |M|); psd iff hermitian and min_eig >= -tol.
HermitianCheck hermitian_psd_check(const CMatrix& m, double tol = kDefaultTol);

/// Eigenvalues (ascending) of the Hermitian part of `m`.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);

/// Hermitian inverse square root M^{-1/2} of a positive definite matrix. Returns false
/// (and leaves `out` untouched) when an eigenvalue is <= tol * |M|.
bool inverse_sqrt(const CMatrix& m, double tol, CMatrix& out);

/// Moore-Penrose pseudo-inverse; singular values below tol * |M| are treated as zero.
CMatrix pseudo_inverse(const CMatrix& m, double tol);

/// Orthonormal basis of the column span, dropping directions with relative singular value < tol.
CMatrix orthonormal_basis(const CMatrix& columns, double tol = 1e-12);

/// Cosines of the principal angles between the column spans of two matrices with
/// orthonormal columns, descending.
Eigen::VectorXd principal_cosines(const CMatrix& q1, const CMatrix& q2);

}  // namespace symsys

#include "symsys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symsys {

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  // One-sided Jacobi keeps small singular values accurate relative to |M|; the
  // normal-equations route loses half the digits of the small ones.
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double min_singular_value(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("min_singular_value: matrix is not square");
  if (m.size() == 0) return 0.0;
  const Eigen::VectorXd s = singular_values(m);
  return s(s.size() - 1);
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  if (m.size() == 0) return Eigen::VectorXd();
  const CMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianCheck hermitian_psd_check(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_psd_check: matrix is not square");
  HermitianCheck out;
  if (m.size() == 0) {
    out.hermitian = out.psd = true;
    return out;
  }
  const double skew = operator_norm(m - m.adjoint());
  out.hermitian = skew <= tol * (1.0 + operator_norm(m));
  out.min_eig = hermitian_eigenvalues(m)(0);
  out.psd = out.hermitian && out.min_eig >= -tol;
  return out;
}

bool inverse_sqrt(const CMatrix& m, double tol, CMatrix& out) {
  const CMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (!(ev(0) > tol * scale) || scale == 0.0) return false;
  const Eigen::VectorXd d = ev.array().rsqrt();
  out = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  return true;
}

CMatrix pseudo_inverse(const CMatrix& m, double tol) {
  if (m.size() == 0) return CMatrix(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol * s(0);
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) inv(k) = (s(k) > cutoff && s(k) > 0.0) ? 1.0 / s(k) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix orthonormal_basis(const CMatrix& columns, double tol) {
  if (columns.cols() == 0) return CMatrix(columns.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol * s(0) && s(rank) > 0.0) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::VectorXd principal_cosines(const CMatrix& q1, const CMatrix& q2) {
  if (q1.cols() == 0 || q2.cols() == 0) return Eigen::VectorXd();
  const CMatrix overlap = q1.adjoint() * q2;
  Eigen::VectorXd s = singular_values(overlap);
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = std::min(s(k), 1.0);
  return s;
}

}  // namespace symsys

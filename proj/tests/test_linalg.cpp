#include <gtest/gtest.h>

#include <random>

#include "symsys/linalg.hpp"

using namespace symsys;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cd(g(rng), g(rng));
  return m;
}

// I - 2 v v* / |v|^2
CMatrix householder(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = cd(g(rng), g(rng));
  return CMatrix::Identity(n, n) - 2.0 * v * v.adjoint() / v.squaredNorm();
}

}  // namespace

TEST(OperatorNorm, Examples) {
  CMatrix a(2, 2);
  a << 0, 2, -2, 0;
  EXPECT_NEAR(operator_norm(a), 2.0, 1e-14);
  EXPECT_NEAR(operator_norm(CMatrix::Identity(3, 3)), 1.0, 1e-14);
  CMatrix shear(2, 2);
  shear << 1, 1, 0, 1;
  // eigenvalues of M*M = [[1,1],[1,2]] are (3 +- sqrt 5)/2
  EXPECT_NEAR(operator_norm(shear), std::sqrt((3.0 + std::sqrt(5.0)) / 2.0), 1e-14);
  EXPECT_EQ(operator_norm(CMatrix(0, 0)), 0.0);
}

TEST(MinSingularValue, Examples) {
  CMatrix a(2, 2);
  a << 1, 0, 0, 0;
  EXPECT_NEAR(min_singular_value(a), 0.0, 1e-15);
  EXPECT_NEAR(min_singular_value(CMatrix::Identity(2, 2)), 1.0, 1e-15);
  CMatrix d(2, 2);
  d << 2, 0, 0, 3;
  EXPECT_NEAR(min_singular_value(d), 2.0, 1e-15);
  EXPECT_THROW(min_singular_value(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(HermitianPsdCheck, Examples) {
  CMatrix d(2, 2);
  d << 1, 0, 0, 0;
  auto r = hermitian_psd_check(d);
  EXPECT_TRUE(r.hermitian);
  EXPECT_TRUE(r.psd);
  EXPECT_NEAR(r.min_eig, 0.0, 1e-15);

  CMatrix skew(2, 2);
  skew << 0, 1, -1, 0;
  EXPECT_FALSE(hermitian_psd_check(skew).hermitian);
  EXPECT_FALSE(hermitian_psd_check(skew).psd);

  CMatrix neg(2, 2);
  neg << 1, 0, 0, -1e-3;
  r = hermitian_psd_check(neg, 1e-12);
  EXPECT_TRUE(r.hermitian);
  EXPECT_FALSE(r.psd);
  EXPECT_NEAR(r.min_eig, -1e-3, 1e-15);
}

TEST(OperatorNorm, AdjointInvariance) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const CMatrix m = random_matrix(rng, 1 + t % 6);
    EXPECT_NEAR(operator_norm(m), operator_norm(m.adjoint()), 1e-12 * operator_norm(m));
  }
}

TEST(OperatorNorm, UnitaryInvariance) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 6;
    const CMatrix m = random_matrix(rng, n);
    const CMatrix u = householder(rng, n) * householder(rng, n);
    const CMatrix v = householder(rng, n);
    EXPECT_NEAR(operator_norm(u * m * v), operator_norm(m), 1e-12 * operator_norm(m));
  }
}

TEST(MinSingularValue, ReciprocalOfInverseNorm) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 6;
    const CMatrix m = random_matrix(rng, n);
    const double smin = min_singular_value(m);
    if (operator_norm(m) / smin > 1e4) continue;  // keep well-conditioned samples
    EXPECT_NEAR(smin * operator_norm(m.inverse()), 1.0, 1e-10);
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(InverseSqrt, SquaresToInverse) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const CMatrix a = random_matrix(rng, 3);
    const CMatrix m = a * a.adjoint() + 0.1 * CMatrix::Identity(3, 3);
    CMatrix r;
    ASSERT_TRUE(inverse_sqrt(m, 1e-12, r));
    EXPECT_LT((r * m * r - CMatrix::Identity(3, 3)).norm(), 1e-9);
  }
  CMatrix singular(2, 2);
  singular << 1, 0, 0, 0;
  CMatrix out;
  EXPECT_FALSE(inverse_sqrt(singular, 1e-12, out));
}

TEST(PseudoInverse, PenroseConditions) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const CMatrix a = random_matrix(rng, 3);
    CMatrix rank2 = a;
    rank2.col(2) = rank2.col(0) + cd(0.0, 2.0) * rank2.col(1);
    const CMatrix p = pseudo_inverse(rank2, 1e-12);
    EXPECT_LT((rank2 * p * rank2 - rank2).norm(), 1e-10 * rank2.norm());
    EXPECT_LT((p * rank2 * p - p).norm(), 1e-10 * p.norm());
    EXPECT_LT(((rank2 * p).adjoint() - rank2 * p).norm(), 1e-10);
  }
}

TEST(PrincipalCosines, SharedDirection) {
  CMatrix q1(3, 2), q2(3, 1);
  q1 << 1, 0, 0, 1, 0, 0;
  q2 << 0, std::sqrt(0.5), std::sqrt(0.5);
  const auto c = principal_cosines(q1, q2);
  ASSERT_EQ(c.size(), 1);
  EXPECT_NEAR(c(0), std::sqrt(0.5), 1e-14);
  EXPECT_EQ(orthonormal_basis(q1 * CMatrix::Ones(2, 2)).cols(), 1);
}

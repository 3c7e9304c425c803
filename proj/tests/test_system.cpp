#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "symsys/errors.hpp"
#include "symsys/system.hpp"

using namespace symsys;
using namespace symsys::testing;

namespace {

const cd I(0.0, 1.0);

CMatrix mat(std::initializer_list<std::initializer_list<cd>> rows) {
  CMatrix m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (cd v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

double max_diff(const MatrixFunction& a, const MatrixFunction& b, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, operator_norm(a(x) - b(x)));
  return worst;
}

}  // namespace

TEST(Validate, RankOneHamiltonianPasses) {
  const auto s = example13();
  EXPECT_TRUE(validate(s, s.default_grid()).pass);
}

TEST(Validate, HermitianBPasses) {
  const SymmetricSystem s(Interval::real_line(), field("[[0,1],[-1,0]]", 2), field("[[1,0],[0,0]]", 2),
                          field("[[1,0],[0,1]]", 2));
  EXPECT_TRUE(validate(s, s.default_grid()).pass);
}

TEST(Validate, NonHermitianBFails) {
  const SymmetricSystem s(Interval::real_line(), field("[[0,1],[-1,0]]", 2), field("[[0,1],[0,0]]", 2),
                          field("[[1,0],[0,1]]", 2));
  const auto r = validate(s, s.default_grid());
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_symmetry_residual, 1.0, 1e-14);
  ASSERT_TRUE(r.first_failure.has_value());
}

TEST(Validate, VariableJNeedsMatchingB) {
  // J = i(2 + sin x): B - B* must equal J' = i cos x
  const auto j = field("[[i*(2 + sin(x))]]", 1);
  const SymmetricSystem good(Interval::real_line(), j, field("[[i*cos(x)/2]]", 1), field("[[1]]", 1));
  EXPECT_TRUE(validate(good, good.default_grid()).pass);
  const SymmetricSystem bad(Interval::real_line(), j, field("[[0]]", 1), field("[[1]]", 1));
  EXPECT_FALSE(validate(bad, bad.default_grid()).pass);
}

TEST(Validate, IndefiniteHFails) {
  const SymmetricSystem s(Interval::real_line(), field("[[0,1],[-1,0]]", 2), field("[[0,0],[0,0]]", 2),
                          field("[[1,0],[0,-1]]", 2));
  EXPECT_FALSE(validate(s, s.default_grid()).pass);
}

TEST(SymmetricSystem, DefaultBasePoints) {
  EXPECT_EQ(SymmetricSystem::default_base_point(Interval::real_line()), 0.0);
  EXPECT_EQ(SymmetricSystem::default_base_point(parse_interval("[2, inf)")), 2.0);
  EXPECT_EQ(SymmetricSystem::default_base_point(parse_interval("(0, 4)")), 2.0);
  EXPECT_EQ(SymmetricSystem::default_base_point(parse_interval("(-inf, 3]")), 3.0);
  EXPECT_EQ(SymmetricSystem::default_base_point(parse_interval("(1, inf)")), 2.0);
}

TEST(SlEmbed, FreeParticleBlocks) {
  const auto s = free_particle();
  for (double x : {-2.0, 0.0, 3.5}) {
    EXPECT_EQ(s.J()(x), mat({{0, I}, {I, 0}}));
    EXPECT_EQ(s.B()(x), mat({{0, 0}, {0, -1}}));
    EXPECT_EQ(s.H()(x), mat({{1, 0}, {0, 0}}));
  }
}

TEST(SlEmbed, OscillatorBlocks) {
  const auto s = oscillator();
  EXPECT_EQ(s.B()(3.0), mat({{9, 0}, {0, -1}}));
  EXPECT_EQ(s.J()(3.0), mat({{0, I}, {I, 0}}));
}

TEST(SlEmbed, MatrixCoefficients) {
  const auto id = field("[[1,0],[0,1]]", 2);
  const auto s = sl_embed(id, field("[[0,0],[0,0]]", 2), id);
  EXPECT_EQ(s.n(), 4);
  CMatrix j = CMatrix::Zero(4, 4);
  j.block(0, 2, 2, 2) = I * CMatrix::Identity(2, 2);
  j.block(2, 0, 2, 2) = I * CMatrix::Identity(2, 2);
  EXPECT_EQ(s.J()(1.0), j);
  EXPECT_TRUE(validate(s, s.default_grid(), 1e-12).pass);
}

TEST(SlEmbed, RejectsSingularA) {
  EXPECT_THROW(sl_embed(field("[[x]]", 1), field("[[0]]", 1), field("[[1]]", 1)), InputError);
}

TEST(SquareSystem, LiteralSquareOfCanonicalSystem) {
  const auto j = field("[[0,1],[-1,0]]", 2);
  const auto z = field("[[0,0],[0,0]]", 2);
  const auto id = field("[[1,0],[0,1]]", 2);
  const SymmetricSystem base(Interval::real_line(), j, z, id);
  const auto s = square_system(SquareSystemSpec{base, id, z, CoefficientField::identity(1)});
  CMatrix jt = CMatrix::Zero(4, 4), bt = CMatrix::Zero(4, 4), ht = CMatrix::Zero(4, 4);
  jt.block(0, 2, 2, 2) = j.evaluate(0);
  jt.block(2, 0, 2, 2) = j.evaluate(0);
  bt.block(2, 2, 2, 2) = -CMatrix::Identity(2, 2);
  ht.block(0, 0, 2, 2) = CMatrix::Identity(2, 2);
  EXPECT_EQ(s.J()(0.7), jt);
  EXPECT_EQ(s.B()(0.7), bt);
  EXPECT_EQ(s.H()(0.7), ht);
}

TEST(SquareSystem, ScalarImaginaryJ) {
  const SymmetricSystem base(Interval::real_line(), field("[[i]]", 1), field("[[0]]", 1), field("[[1]]", 1));
  const auto s = square_system(SquareSystemSpec{base, field("[[1]]", 1), field("[[0]]", 1), field("[[1]]", 1)});
  EXPECT_EQ(s.J()(0.0), mat({{0, I}, {I, 0}}));
}

TEST(SquareSystem, AgreesWithEmbeddingOnOscillator) {
  const auto s = square_system(oscillator_spec());
  const auto e = oscillator();
  const std::vector<double> xs{-4, -1, 0, 0.5, 2, 7};
  EXPECT_EQ(max_diff(s.J(), e.J(), xs), 0.0);
  EXPECT_EQ(max_diff(s.B(), e.B(), xs), 0.0);
  EXPECT_EQ(max_diff(s.H(), e.H(), xs), 0.0);
}

TEST(SquareSystem, OutputsValidateExactly) {
  RandomSystems gen(77);
  for (int t = 0; t < 8; ++t) {
    const auto base = gen.next();
    const auto a = field("[[2 + sin(x), 0.5*i], [-0.5*i, 1 + x^2]]", 2);
    const auto v = field("[[cos(x), 0], [0, -x^2]]", 2);
    const auto s = square_system(SquareSystemSpec{base, a, v, field("[[1 + x^2]]", 1)});
    const auto r = validate(s, s.default_grid({128, 16.0}), 1e-12);
    EXPECT_TRUE(r.pass) << "system " << t << ": symmetry residual " << r.max_symmetry_residual;
  }
}

TEST(SquareSystem, RejectsBadSpec) {
  const auto base = free_particle_spec().base;
  const auto one = field("[[1]]", 1);
  EXPECT_THROW(square_system(SquareSystemSpec{base, field("[[-1]]", 1), one, one}), InputError);
  EXPECT_THROW(square_system(SquareSystemSpec{base, one, field("[[i]]", 1), one}), InputError);
  EXPECT_THROW(square_system(SquareSystemSpec{base, one, one, field("[[0.5]]", 1)}), InputError);
}

TEST(GaugeApply, IdentityAndScalarUnitaryLeaveSystemUnchanged) {
  RandomSystems gen(5);
  const auto s = gen.next();
  const std::vector<double> xs{-3, -0.2, 0, 1.1, 4};
  for (const auto& u : {GaugeTransform::identity(2), GaugeTransform(field("[[exp(0.7*i), 0], [0, exp(0.7*i)]]", 2))}) {
    const auto g = gauge_apply(s, u);
    EXPECT_LE(max_diff(g.J(), s.J(), xs), 1e-14);
    EXPECT_LE(max_diff(g.B(), s.B(), xs), 1e-14);
    EXPECT_LE(max_diff(g.H(), s.H(), xs), 1e-14);
  }
}

TEST(GaugeApply, FreeParticleHomogeneousSolution) {
  const auto g = gauge_apply(free_particle(), GaugeTransform(field("[[1, -i*x], [0, 1]]", 2)));
  for (double x : {-2.0, 0.0, 1.5, 10.0}) {
    EXPECT_LE(operator_norm(g.J()(x) - mat({{0, I}, {I, 0}})), 1e-14);
    EXPECT_LE(operator_norm(g.B()(x)), 1e-14);
    EXPECT_LE(operator_norm(g.H()(x) - mat({{1, -I * x}, {I * x, x * x}})), 1e-13);
  }
}

TEST(GaugeApply, PreservesValidation) {
  RandomSystems gen(21);
  for (int t = 0; t < 12; ++t) {
    const auto s = gen.next();
    const auto g = gauge_apply(s, GaugeTransform(gen.gauge()));
    const auto r = validate(g, s.default_grid({128, 16.0}), 1e-10);
    EXPECT_LE(r.max_skew_residual, 1e-9);
    EXPECT_LE(r.max_symmetry_residual, 1e-9);
    EXPECT_LE(r.max_h_hermitian_residual, 1e-9);
  }
}

TEST(GaugeApply, CompositionWithInverseRestoresSystem) {
  RandomSystems gen(22);
  const std::vector<double> xs{-5, -1.3, 0, 0.4, 2.2, 6};
  for (int t = 0; t < 6; ++t) {
    const auto s = gen.next();
    const GaugeTransform u(gen.gauge());
    const auto back = gauge_apply(gauge_apply(s, u), u.inverse());
    EXPECT_LE(max_diff(back.J(), s.J(), xs), 1e-8);
    EXPECT_LE(max_diff(back.B(), s.B(), xs), 1e-8);
    EXPECT_LE(max_diff(back.H(), s.H(), xs), 1e-8);
  }
}

TEST(GaugeApply, RejectsSingularTransform) {
  const std::vector<double> grid{-1.0, 0.0, 1.0};
  EXPECT_THROW(gauge_apply(example13(), GaugeTransform(field("[[x, 0], [0, 1]]", 2)), grid), NumericalError);
}

TEST(CanonicalReduce, CanonicalSystemUnchanged) {
  const auto s = example13();
  const auto red = canonical_reduce(s, s.default_grid());
  for (double x : {-30.0, -1.0, 0.5, 60.0}) {
    EXPECT_LE(operator_norm(red.transform.value(x) - CMatrix::Identity(2, 2)), 1e-12);
    EXPECT_LE(operator_norm(red.system.B()(x)), 1e-12);
    EXPECT_LE(operator_norm(red.system.H()(x) - s.H()(x)), 1e-12);
  }
}

TEST(CanonicalReduce, RandomSystemsBecomeCanonical) {
  RandomSystems gen(31);
  for (int t = 0; t < 6; ++t) {
    const auto s = gen.next();
    const auto grid = chebyshev_grid(Interval::closed(-6, 6), {}, {128, 64.0});
    const auto red = canonical_reduce(s, grid);
    const CMatrix j0 = s.J()(s.x0());
    for (double x : grid) {
      EXPECT_LE(operator_norm(red.system.B()(x)), 1e-8) << "system " << t << " at " << x;
      EXPECT_LE(operator_norm(red.system.J()(x) - j0), 1e-8) << "system " << t << " at " << x;
    }
  }
}

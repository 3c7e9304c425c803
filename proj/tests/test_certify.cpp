#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "symsys/analysis.hpp"
#include "symsys/certify.hpp"
#include "symsys/errors.hpp"

using namespace symsys;
using namespace symsys::testing;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const cd I(0.0, 1.0);
}  // namespace

TEST(Speed, Examples) {
  const auto j = field("[[0,1],[-1,0]]", 2);
  const auto id = field("[[1,0],[0,1]]", 2);
  const auto c = SpeedFunction::square(id, j, id);
  for (double x : {-3.0, 0.0, 2.0}) EXPECT_NEAR(c(x), 1.0, 1e-14);

  const auto e = SpeedFunction::hamiltonian(j, field("[[1,0],[0,exp(2*x)]]", 2));
  for (double x : {-1.0, 0.0, 0.5, 3.0}) EXPECT_NEAR(e(x), std::exp(-x), 1e-13 * std::exp(-x));

  const auto r = SpeedFunction::hamiltonian(j, field("[[1,0],[0,0]]", 2));
  EXPECT_TRUE(std::isinf(r(0.3)));
  EXPECT_EQ(r.reciprocal(0.3), 0.0);
}

TEST(Speed, InvariantUnderConstantUnitary) {
  std::mt19937_64 rng(61);
  RandomSystems gen(61);
  for (int t = 0; t < 5; ++t) {
    const auto s = gen.next();
    // a constant unitary: Householder reflection
    CVector v(2);
    v << gen.cuniform(1.0), gen.cuniform(1.0);
    const CMatrix u = CMatrix::Identity(2, 2) - 2.0 * v * v.adjoint() / v.squaredNorm();
    const auto g = gauge_apply(s, GaugeTransform(CoefficientField::constant(u)));
    const auto c0 = SpeedFunction::hamiltonian(s.J(), s.H());
    const auto c1 = SpeedFunction::hamiltonian(g.J(), g.H());
    for (double x : {-2.0, 0.1, 1.7}) {
      if (std::isinf(c0(x))) {
        EXPECT_TRUE(std::isinf(c1(x)));
      } else {
        EXPECT_NEAR(c0(x), c1(x), 1e-10 * c0(x));
      }
    }
  }
}

TEST(DivergenceTest, Examples) {
  EXPECT_EQ(divergence_test([](double) { return 1.0; }, kInf).verdict, Divergence::Diverges);
  EXPECT_EQ(divergence_test([](double x) { return std::exp(-x); }, kInf).verdict, Divergence::Converges);
  EXPECT_EQ(divergence_test([](double x) { return 1.0 / std::sqrt(1.0 + x * x); }, kInf).verdict,
            Divergence::Diverges);
  EXPECT_EQ(divergence_test([](double x) { return 1.0 / std::sqrt(1.0 + x * x); }, -kInf).verdict,
            Divergence::Diverges);
  EXPECT_EQ(divergence_test([](double x) { return 1.0 / (1.0 + x * x); }, -kInf).verdict, Divergence::Converges);
}

TEST(DivergenceTest, FiniteEndpoint) {
  EXPECT_EQ(divergence_test([](double x) { return 1.0 / (1.0 - x); }, 1.0).verdict, Divergence::Diverges);
  EXPECT_EQ(divergence_test([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 1.0).verdict, Divergence::Converges);
}

TEST(DivergenceTest, NegativeIntegrandIsUnknown) {
  const auto r = divergence_test([](double x) { return std::sin(x); }, kInf);
  EXPECT_EQ(r.verdict, Divergence::Unknown);
  EXPECT_FALSE(r.note.empty());
}

TEST(DivergenceTest, OscillatingIncrementsAreUnknown) {
  // density 1 and 1/8 on alternating dyadic windows
  const auto r = divergence_test(
      [](double x) { return static_cast<int>(std::floor(std::log2(std::max(x, 1.0)))) % 2 ? 1.0 / 8 : 1.0; }, kInf);
  EXPECT_EQ(r.verdict, Divergence::Unknown);
}

TEST(CutoffSequence, ProfileShape) {
  EXPECT_EQ(CutoffSequence::profile(0.0), 1.0);
  EXPECT_EQ(CutoffSequence::profile(0.5), 1.0);
  EXPECT_EQ(CutoffSequence::profile(-2.5), 0.0);
  EXPECT_EQ(CutoffSequence::profile(3.0), 0.0);
  double max_slope = 0.0;
  for (int k = 0; k <= 4000; ++k) {
    const double t = -3.0 + 6.0 * k / 4000;
    const double p = CutoffSequence::profile(t);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    max_slope = std::max(max_slope, std::abs(CutoffSequence::profile_derivative(t)));
    const double h = 1e-6;
    EXPECT_NEAR(CutoffSequence::profile_derivative(t),
                (CutoffSequence::profile(t + h) - CutoffSequence::profile(t - h)) / (2 * h), 1e-6);
  }
  EXPECT_LE(max_slope, 1.0);
  EXPECT_NEAR(max_slope, 15.0 / 16.0, 1e-6);
}

TEST(CutoffSequence, UnitDensityIsDilatedProfile) {
  const auto seq = std::make_shared<CutoffSequence>([](double) { return 1.0; });
  for (int n : {1, 3, 10}) {
    const auto chi = cutoff_sequence(seq, n);
    for (double x : {-40.0, -7.3, -1.0, 0.0, 2.2, 9.9, 31.0}) {
      EXPECT_NEAR(chi(x), CutoffSequence::profile(x / n), 1e-13);
      EXPECT_LE(std::abs(chi.derivative(x)), 1.0 / n + 1e-12);
    }
  }
  double prev = 0.0;
  for (int n = 1; n <= 64; n *= 2) {
    const double v = seq->value(n, 5.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 1.0);
}

TEST(CutoffSequence, ExponentialDensitySupportEdge) {
  const auto seq = std::make_shared<CutoffSequence>([](double x) { return std::exp(std::abs(x)); });
  for (int n : {1, 5, 40}) {
    // F(x) = e^x - 1 reaches n * 5/2 at log(1 + 5n/2)
    const double edge = std::log(1.0 + CutoffSequence::kSupport * n);
    const auto right = seq->support_edge(n, true);
    const auto left = seq->support_edge(n, false);
    ASSERT_TRUE(right && left);
    EXPECT_NEAR(*right, edge, 1e-9);
    EXPECT_NEAR(*left, -edge, 1e-9);
    EXPECT_EQ(seq->value(n, edge + 1e-6), 0.0);
    EXPECT_NEAR(seq->cumulative(1.3), std::exp(1.3) - 1.0, 1e-12);
  }
}

TEST(CutoffSequence, NonIntegrableTailHasNoSupportEdge) {
  const auto seq = std::make_shared<CutoffSequence>([](double x) { return 1.0 / (1.0 + x * x); });
  EXPECT_FALSE(seq->support_edge(1, true).has_value());
}

TEST(CutoffSequence, RejectsNegativeDensity) {
  const CutoffSequence seq([](double x) { return x; });
  EXPECT_THROW(seq.cumulative(-1.0), InputError);
}

TEST(CutoffSequence, DerivativeBoundOnRandomDensities) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int t = 0; t < 5; ++t) {
    const double a = u(rng), b = u(rng);
    auto f = [a, b](double x) { return a + std::sin(b * x) * std::sin(b * x) + 0.1 * x * x; };
    const auto seq = std::make_shared<CutoffSequence>(f);
    for (int n : {1, 2, 7}) {
      for (int k = 0; k <= 2000; ++k) {
        const double x = -20.0 + 40.0 * k / 2000;
        EXPECT_LE(std::abs(seq->derivative(n, x)) - f(x) / n, 1e-12);
      }
    }
  }
}

TEST(GradientBound, Examples) {
  const auto one = SpeedFunction::square(field("[[1]]", 1), field("[[i]]", 1), field("[[1]]", 1));
  const auto grid = chebyshev_grid(Interval::real_line(), {});
  EXPECT_EQ(check_gradient_bound(field("[[1]]", 1), one, grid).C, 0.0);

  const auto g = check_gradient_bound(field("[[1 + x^2]]", 1), one, grid);
  EXPECT_TRUE(g.ok);
  EXPECT_NEAR(g.C, 2.0 / (3.0 * std::sqrt(3.0)), 1e-9);
  EXPECT_NEAR(std::abs(g.argmax), 1.0 / std::sqrt(2.0), 1e-4);

  const auto half = chebyshev_grid(parse_interval("[0,inf)"), {});
  const auto e = check_gradient_bound(parse_matrix_function("on [0,inf): [[exp(2*x)]]", 1, 1), one, half);
  EXPECT_TRUE(e.ok);
  EXPECT_NEAR(e.C, 1.0, 1e-6);
}

TEST(GradientBound, GrowingBoundFails) {
  // c = (1 + x^2)^{3/2} against |d/dx q^{-1/2}| = |x| (1 + x^2)^{-3/2}: the product is |x|
  const auto c = SpeedFunction::square(field("[[1/(1 + x^2)^3]]", 1), field("[[i]]", 1), field("[[1]]", 1));
  const auto g = check_gradient_bound(field("[[1 + x^2]]", 1), c, chebyshev_grid(Interval::real_line(), {}));
  EXPECT_FALSE(g.ok);
  EXPECT_FALSE(g.reason.empty());
}

TEST(GradientBound, RejectsSmallWeight) {
  const auto one = SpeedFunction::square(field("[[1]]", 1), field("[[i]]", 1), field("[[1]]", 1));
  EXPECT_THROW(check_gradient_bound(field("[[0.5]]", 1), one, {0.0, 1.0}), InputError);
}

TEST(Certify, FreeParticleAndOscillator) {
  for (const auto& spec : {free_particle_spec(), oscillator_spec()}) {
    const auto c = certify_selfadjoint(spec);
    EXPECT_EQ(c.verdict, Verdict::Certified);
    EXPECT_EQ(c.route, Route::SturmLiouville);
    EXPECT_EQ(c.gradient.C, 0.0);
    EXPECT_EQ(c.toward_plus.verdict, Divergence::Diverges);
    EXPECT_EQ(c.toward_minus.verdict, Divergence::Diverges);
  }
}

TEST(Certify, QuarticPotential) {
  const auto one = field("[[1]]", 1);
  const auto v = field("[[-x^4]]", 1);
  const auto c1 = certify_selfadjoint(sturm_liouville_spec(one, v, one, one, Interval::real_line()));
  EXPECT_EQ(c1.verdict, Verdict::HypothesesFailed);
  EXPECT_EQ(c1.failed_item, "V >= -qH");
  ASSERT_TRUE(c1.potential_failure_x);
  EXPECT_GT(std::abs(*c1.potential_failure_x), 1.0);

  const auto c2 =
      certify_selfadjoint(sturm_liouville_spec(one, v, one, field("[[1 + x^4]]", 1), Interval::real_line()));
  EXPECT_EQ(c2.verdict, Verdict::HypothesesFailed);
  EXPECT_EQ(c2.failed_item, "divergence");
  EXPECT_EQ(c2.toward_plus.verdict, Divergence::Converges);
  EXPECT_TRUE(c2.gradient.ok);
}

TEST(Certify, WeightedRouteChecksDefiniteness) {
  CertifyOptions opt;
  opt.route = Route::Weighted;
  const auto c = certify_selfadjoint(oscillator_spec(), opt);
  EXPECT_EQ(c.verdict, Verdict::Certified);
  ASSERT_TRUE(c.definite.has_value());
  EXPECT_TRUE(*c.definite);
}

TEST(Certify, SturmLiouvilleRouteNeedsPositiveA) {
  const SymmetricSystem base(Interval::real_line(), field("[[i]]", 1), field("[[0]]", 1), field("[[1]]", 1));
  CertifyOptions opt;
  opt.route = Route::SturmLiouville;
  const auto c = certify_selfadjoint(SquareSystemSpec{base, parse_matrix_function("on (-inf,0): [[0]]; on [0,inf): [[1]]", 1, 1), field("[[0]]", 1),
                                                      field("[[1]]", 1)},
                                     opt);
  EXPECT_EQ(c.verdict, Verdict::HypothesesFailed);
  EXPECT_EQ(c.failed_item, "A positive definite");
}

TEST(Certify, BareSystems) {
  EXPECT_EQ(certify_selfadjoint(canonical_identity()).verdict, Verdict::Certified);
  const auto c = certify_selfadjoint(example13());
  EXPECT_EQ(c.verdict, Verdict::HypothesesFailed);
  EXPECT_EQ(c.failed_item, "divergence");
  EXPECT_THROW(certify_selfadjoint(free_particle(parse_interval("[0,inf)"))), InputError);
  CertifyOptions sl;
  sl.route = Route::SturmLiouville;
  EXPECT_THROW(certify_selfadjoint(canonical_identity(), sl), InputError);
}

TEST(Certify, RouteNames) {
  EXPECT_EQ(parse_route("auto"), Route::Auto);
  EXPECT_EQ(parse_route("sturm-liouville"), Route::SturmLiouville);
  EXPECT_THROW(parse_route("no-such-route"), InputError);
}

TEST(Certify, CertifiedDefiniteSystemsHaveZeroIndices) {
  const std::vector<std::string> hs{"[[1,0],[0,1]]", "[[3 + cos(x),0],[0,1 + sin(x)^2]]"};
  for (const auto& h : hs) {
    const SymmetricSystem s(Interval::real_line(), field("[[0,1],[-1,0]]", 2), field("[[0,0],[0,0]]", 2),
                            field(h, 2));
    ASSERT_EQ(certify_selfadjoint(s).verdict, Verdict::Certified);
    const auto r = deficiency_indices(s, I, {1, 2, 3, 4, 6, 8});
    EXPECT_EQ(r.n_plus_lo, 0);
    EXPECT_EQ(r.n_minus_lo, 0);
  }
}

TEST(Shubin, FreeParticleQuadraticBump) {
  // f1 = (1 - x^2)^2, f2 = -i f1', g = -f1''; lhs = |f1'|^2, rhs = 2(|f|^2 + |f||g|)
  const auto f1 = polynomial_bump({{1.0}}, 0.0, 1.0, 2);
  const auto r = shubin_verify(free_particle_spec(), f1, Interval::closed(-1, 1));
  EXPECT_TRUE(r.satisfied);
  EXPECT_EQ(r.C, 0.0);
  // oracles by hand: int f1'^2 = 256/105, int f1^2 = 256/315, int f1''^2 = 128/5
  EXPECT_NEAR(r.lhs, 256.0 / 105.0, 1e-10);
  EXPECT_NEAR(r.f_norm, std::sqrt(256.0 / 315.0), 1e-10);
  EXPECT_NEAR(r.g_norm, std::sqrt(128.0 / 5.0), 1e-10);
  EXPECT_NEAR(r.rhs, 2.0 * (256.0 / 315.0 + std::sqrt(256.0 / 315.0 * 128.0 / 5.0)), 1e-9);
}

TEST(Shubin, ZeroFunction) {
  const auto r = shubin_verify(free_particle_spec(), polynomial_bump({{0.0}}, 0.0, 1.0, 2), Interval::closed(-1, 1));
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.satisfied);
}

TEST(Shubin, OscillatorQuarticBump) {
  const auto r = shubin_verify(oscillator_spec(), polynomial_bump({{1.0}}, 0.0, 1.0, 4), Interval::closed(-1, 1));
  EXPECT_TRUE(r.satisfied);
  EXPECT_GT(r.lhs, 0.0);
}

TEST(Shubin, WeightedQuarticSpec) {
  // q = 1 + x^4 gives C > 0; the estimate still holds since the other hypotheses do
  const auto one = field("[[1]]", 1);
  const auto spec = sturm_liouville_spec(one, field("[[-x^4]]", 1), one, field("[[1 + x^4]]", 1),
                                         Interval::real_line());
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> m(-3, 3), w(0.5, 2.0), c(-1, 1);
  for (int t = 0; t < 10; ++t) {
    const double mm = m(rng), ww = w(rng);
    const auto r = shubin_verify(spec, polynomial_bump({{c(rng), c(rng)}}, mm, ww, 3),
                                 Interval::closed(mm - ww, mm + ww));
    EXPECT_GT(r.C, 0.0);
    EXPECT_TRUE(r.satisfied) << r.lhs << " > " << r.rhs;
  }
}

TEST(PolynomialBump, ShapeAndSupport) {
  const auto b = polynomial_bump({{1.0, 2.0}}, 1.0, 0.5, 3);
  EXPECT_EQ(b.evaluate(0.4)(0, 0), cd(0.0));
  EXPECT_EQ(b.evaluate(1.6)(0, 0), cd(0.0));
  EXPECT_NEAR(b.evaluate(1.0)(0, 0).real(), 3.0, 1e-15);
  EXPECT_NEAR(b.evaluate(1.25)(0, 0).real(), 3.5 * std::pow(0.75, 3), 1e-14);
}

#include <gtest/gtest.h>

#include <random>

#include "symsys/coefficient_field.hpp"
#include "symsys/errors.hpp"
#include "symsys/expression.hpp"

using namespace symsys;

TEST(ParseMatrixFunction, ConstantField) {
  const auto f = parse_matrix_function("[[0,1],[-1,0]]", 2);
  CMatrix j(2, 2);
  j << 0, 1, -1, 0;
  for (double x : {-3.0, 0.0, 7.0}) EXPECT_EQ(f.evaluate(x), j);
}

TEST(ParseMatrixFunction, Polynomial) {
  EXPECT_EQ(parse_matrix_function("[[x^2]]", 1).evaluate(2.0)(0, 0), cd(4.0));
}

TEST(ParseMatrixFunction, Piecewise) {
  const auto f = parse_matrix_function("on [0,1): [[1]]; on [1,inf): [[0]]", 1);
  EXPECT_EQ(f.evaluate(0.5)(0, 0), cd(1.0));
  EXPECT_EQ(f.evaluate(2.0)(0, 0), cd(0.0));
  EXPECT_EQ(f.evaluate(1.0)(0, 0), cd(0.0));
  EXPECT_EQ(f.breakpoints(), std::vector<double>{1.0});
  EXPECT_THROW(f.evaluate(-1.0), DomainError);
}

TEST(ParseMatrixFunction, ComplexEntries) {
  const auto f = parse_matrix_function("[[i, 2-3*i], [exp(i*x), 0]]", 2);
  EXPECT_EQ(f.evaluate(0.0)(0, 0), cd(0, 1));
  EXPECT_EQ(f.evaluate(0.0)(0, 1), cd(2, -3));
  EXPECT_NEAR(std::abs(f.evaluate(M_PI)(1, 0) - cd(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(parse_matrix_function("[[exp(x)]]", 1).evaluate(0.0)(0, 0), cd(1.0));
  EXPECT_THROW(parse_matrix_function("[[1/x]]", 1).evaluate(0.0), EvaluationError);
  EXPECT_THROW(parse_matrix_function("[[log(x)]]", 1).evaluate(-1.0), EvaluationError);
}

TEST(Evaluate, ErrorCarriesEntry) {
  try {
    parse_matrix_function("[[1, 0], [0, 1/x]]", 2).evaluate(0.0);
    FAIL() << "expected an evaluation error";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.row(), 1);
    EXPECT_EQ(e.col(), 1);
    EXPECT_EQ(e.x(), 0.0);
  }
}

TEST(Differentiate, Examples) {
  const auto d = parse_matrix_function("[[sin(x)]]", 1).differentiate();
  EXPECT_EQ(d.to_string(), "[[cos(x)]]");
  const auto z = parse_matrix_function("[[1, 2], [3, 4]]", 2).differentiate();
  EXPECT_EQ(z.evaluate(1.5), CMatrix::Zero(2, 2));
  EXPECT_EQ(parse_matrix_function("[[x^3]]", 1).differentiate().evaluate(2.0)(0, 0), cd(12.0));
}

TEST(Parse, SyntaxErrorsHavePositions) {
  try {
    parse_matrix_function("[[1, 2],\n [3, sin(]]", 2);
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_matrix_function("[[1, 2]]", 2), InputError);
  EXPECT_THROW(parse_matrix_function("[[foo(x)]]", 1), SyntaxError);
  EXPECT_THROW(parse_matrix_function("on [0,1): [[1]]; on [2,3): [[1]]", 1), InputError);
}

TEST(ParseInterval, Forms) {
  const Interval r = parse_interval("(-inf, inf)");
  EXPECT_TRUE(r.is_real_line());
  const Interval h = parse_interval("[0, inf)");
  EXPECT_TRUE(h.is_half_closed());
  EXPECT_TRUE(h.contains(0.0));
  EXPECT_FALSE(parse_interval("(0, 1]").contains(0.0));
  EXPECT_THROW(parse_interval("[1, 0]"), InputError);
}

TEST(ParseComplex, Literals) {
  EXPECT_EQ(parse_complex("1+2i"), cd(1, 2));
  EXPECT_EQ(parse_complex("-i"), cd(0, -1));
  EXPECT_EQ(parse_complex("0.5"), cd(0.5, 0));
}

namespace {

const char* kSmoothFields[] = {
    "[[sin(x)*exp(-x^2), x^3 - 2*x], [cos(2*x)/(2 + x^2), tanh(x)*i]]",
    "[[sqrt(1 + x^2), log(2 + sin(x))], [exp(i*x), (1 + x)^4]]",
    "[[1/(3 + cos(x)), 0], [x*sin(x)^2, 2]]",
};

}  // namespace

TEST(CoefficientField, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<std::string> sources(std::begin(kSmoothFields), std::end(kSmoothFields));
  sources.push_back("on (-inf, 0): [[x, 1], [0, x^2]]; on [0, inf): [[sin(x), 1], [0, abs(x)]]");
  for (const auto& text : sources) {
    const auto f = parse_matrix_function(text, 2);
    const auto g = parse_matrix_function(f.to_string(), 2);
    for (int k = 0; k < 50; ++k) {
      const double x = u(rng);
      EXPECT_LE((f.evaluate(x) - g.evaluate(x)).cwiseAbs().maxCoeff(), 1e-14) << text << " at " << x;
    }
  }
}

TEST(CoefficientField, DerivativeMatchesCentralDifferences) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double h = 1e-5;
  for (const char* text : kSmoothFields) {
    const auto f = parse_matrix_function(text, 2);
    const auto d = f.differentiate();
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng);
      const CMatrix fd = (f.evaluate(x + h) - f.evaluate(x - h)) / (2 * h);
      const CMatrix exact = d.evaluate(x);
      for (int e = 0; e < 4; ++e) {
        const cd a = exact(e / 2, e % 2), b = fd(e / 2, e % 2);
        EXPECT_LE(std::abs(a - b), 1e-6 * std::max(1.0, std::abs(a))) << text << " at " << x;
      }
    }
  }
}

TEST(CoefficientField, BlockAndKinks) {
  const auto a = parse_matrix_function("[[abs(x)]]", 1);
  EXPECT_TRUE(a.has_kink());
  const auto b = CoefficientField::block({{a, CoefficientField::zero(1, 1)}, {CoefficientField::zero(1, 1), -a}});
  EXPECT_EQ(b.rows(), 2);
  EXPECT_EQ(b.evaluate(-2.0)(1, 1), cd(-2.0));
}

#include <benchmark/benchmark.h>

#include "symsys/coefficient_field.hpp"
#include "symsys/expression.hpp"

using namespace symsys;

static void BM_ParseField(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        parse_matrix_function("on (-inf, 0): [[1, x], [x, exp(-x^2)]]; on [0, inf): [[1 + sin(x)^2, 0], [0, 2]]", 2, 2));
  }
}
BENCHMARK(BM_ParseField);

static void BM_EvaluateScalar(benchmark::State& state) {
  const Expression e = parse_expression("exp(-x^2/2) * cos(3*x) + sqrt(1 + x^4) / (2 + sin(x))");
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.evaluate(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_EvaluateScalar);

static void BM_EvaluateField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::string text = "[";
  for (int i = 0; i < n; ++i) {
    text += i ? ", [" : "[";
    for (int j = 0; j < n; ++j) text += (j ? ", " : "") + std::string(i == j ? "1 + x^2" : "sin(x) / 10");
    text += "]";
  }
  text += "]";
  const CoefficientField f = parse_matrix_function(text, n, n);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.evaluate(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_EvaluateField)->Arg(2)->Arg(4)->Arg(8);

static void BM_Differentiate(benchmark::State& state) {
  const CoefficientField f = parse_matrix_function("[[x^3 * exp(-x), sin(x)^2], [cos(x^2), log(1 + x^2)]]", 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(f.differentiate());
}
BENCHMARK(BM_Differentiate);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "symsys/coefficient_field.hpp"
#include "symsys/propagator.hpp"
#include "symsys/system.hpp"

using namespace symsys;

namespace {

CoefficientField field(const char* text, int n) { return parse_matrix_function(text, n, n); }

SymmetricSystem oscillator() {
  return sl_embed(field("[[1]]", 1), field("[[x^2]]", 1), field("[[1]]", 1));
}

}  // namespace

static void BM_PropagateOscillator(benchmark::State& state) {
  const auto s = oscillator();
  const double end = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(s, cd(0.0, 1.0), {-end, end}));
}
BENCHMARK(BM_PropagateOscillator)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_PropagateTolerance(benchmark::State& state) {
  const auto s = oscillator();
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(s, cd(1.0, 1.0), {-3.0, 3.0}, tol));
}
BENCHMARK(BM_PropagateTolerance)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_PropagatePiecewise(benchmark::State& state) {
  const SymmetricSystem s(Interval::real_line(), field("[[0, 1], [-1, 0]]", 2), field("[[0, 0], [0, 0]]", 2),
                          field("on (-inf, 0): [[0, 0], [0, 0]]; on [0, inf): [[1, 0], [0, 1 + sin(x)^2]]", 2));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(s, cd(0.5, 0.0), {-5.0, 5.0}));
}
BENCHMARK(BM_PropagatePiecewise)->Unit(benchmark::kMillisecond);

static void BM_GramMatrix(benchmark::State& state) {
  const auto fs = propagate(oscillator(), cd(0.0, 1.0), {-4.0, 4.0});
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(fs, Interval::closed(-1.5, 2.5)));
}
BENCHMARK(BM_GramMatrix)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

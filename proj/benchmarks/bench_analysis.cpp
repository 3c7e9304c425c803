#include <benchmark/benchmark.h>

#include "symsys/analysis.hpp"
#include "symsys/certify.hpp"
#include "symsys/coefficient_field.hpp"
#include "symsys/system.hpp"

using namespace symsys;

namespace {

CoefficientField field(const char* text) { return parse_matrix_function(text, 1, 1); }

const std::vector<double> kTruncations{1, 1.5, 2, 2.5, 3, 3.5, 4};

}  // namespace

static void BM_DeficiencyHalfLine(benchmark::State& state) {
  const auto s = sl_embed(field("[[1]]"), field("[[x^2]]"), field("[[1]]"), parse_interval("[0,inf)"));
  for (auto _ : state) benchmark::DoNotOptimize(deficiency_indices(s, cd(0.0, 1.0), kTruncations));
}
BENCHMARK(BM_DeficiencyHalfLine)->Unit(benchmark::kMillisecond);

static void BM_DeficiencyRealLine(benchmark::State& state) {
  const auto s = sl_embed(field("[[1]]"), field("[[x^2]]"), field("[[1]]"));
  for (auto _ : state) benchmark::DoNotOptimize(deficiency_indices(s, cd(0.0, 1.0), kTruncations));
}
BENCHMARK(BM_DeficiencyRealLine)->Unit(benchmark::kMillisecond);

static void BM_Definiteness(benchmark::State& state) {
  const auto s = sl_embed(field("[[1]]"), field("[[0]]"), field("[[1]]"));
  const auto candidates = default_candidates(s, {1, 2, 4, 8});
  for (auto _ : state) benchmark::DoNotOptimize(definiteness(s, candidates, cd(0.0, 0.0)));
}
BENCHMARK(BM_Definiteness)->Unit(benchmark::kMillisecond);

static void BM_CertifyOscillator(benchmark::State& state) {
  const auto spec = sturm_liouville_spec(field("[[1]]"), field("[[x^2]]"), field("[[1]]"), field("[[1]]"),
                                         Interval::real_line());
  for (auto _ : state) benchmark::DoNotOptimize(certify_selfadjoint(spec));
}
BENCHMARK(BM_CertifyOscillator)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

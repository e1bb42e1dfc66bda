#include <benchmark/benchmark.h>

#include "tsat/distribution.hpp"
#include "tsat/kernels.hpp"

namespace {

tsat::Exec exec_of(const benchmark::State& s) { return s.range(0) ? tsat::Exec::parallel : tsat::Exec::serial; }

void BM_OmegaCensus(benchmark::State& state) {
  for (auto _ : state) {
    auto c = tsat::omega_census(20000, 4.506, 32, 7, 8, exec_of(state));
    benchmark::DoNotOptimize(c.sum.data());
  }
}
BENCHMARK(BM_OmegaCensus)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_GridSweep(benchmark::State& state) {
  const auto params = tsat::ModelParams::certification();
  const auto w = tsat::make_weights<double>(params);
  const tsat::Rectangle r{0.54, 0.60, 0.40, 0.50};
  for (auto _ : state) {
    auto g = tsat::grid_sweep(w, r, 40, 40, exec_of(state));
    benchmark::DoNotOptimize(g.eq1.data());
  }
}
BENCHMARK(BM_GridSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_PolygonGrid(benchmark::State& state) {
  const auto b = tsat::AprioriBounds::certification();
  for (auto _ : state) {
    auto p = tsat::polygon_grid_extrema(b, 1000, exec_of(state));
    benchmark::DoNotOptimize(p.V_min);
  }
}
BENCHMARK(BM_PolygonGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_PpsCorpus(benchmark::State& state) {
  for (auto _ : state) {
    auto p = tsat::pps_corpus_census(12, 54, 200, 11, exec_of(state));
    benchmark::DoNotOptimize(p.pps_total);
  }
}
BENCHMARK(BM_PpsCorpus)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <qcorr/correlations.hpp>
#include <qcorr/dynamics.hpp>
#include <qcorr/simulation.hpp>

using namespace qcorr;

namespace {

const XStateParams kState{1.0, -0.3, 0.3};
const ModelParams kModel = ModelParams::identical(1.0, 10.0, 100.0);

void BM_ClosedFormState(benchmark::State& st) {
  double t = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(evolve_x_closed(kState, 2.0, kModel, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_ClosedFormState);

void BM_ClosedFormCorrelations(benchmark::State& st) {
  const auto rho = evolve_x_closed(kState, 2.0, kModel, 3.3);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_correlations(rho, 3.3));
}
BENCHMARK(BM_ClosedFormCorrelations);

void BM_BruteForce(benchmark::State& st) {
  const auto rho = evolve_x_closed(kState, 2.0, kModel, 3.3);
  const int grid = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(classical_correlation_bruteforce(rho, grid));
}
BENCHMARK(BM_BruteForce)->Arg(16)->Arg(64);

void BM_Wootters(benchmark::State& st) {
  const auto rho = evolve_x_closed(kState, 2.0, kModel, 3.3);
  for (auto _ : st) benchmark::DoNotOptimize(concurrence_general(rho));
}
BENCHMARK(BM_Wootters);

void BM_Trajectory(benchmark::State& st) {
  Scenario sc;
  sc.samples = 256;
  const auto engine = static_cast<EngineKind>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(simulate(sc, engine));
  st.SetLabel(std::string(to_string(engine)));
}
BENCHMARK(BM_Trajectory)
    ->Arg(static_cast<int>(EngineKind::closed))
    ->Arg(static_cast<int>(EngineKind::effective))
    ->Arg(static_cast<int>(EngineKind::jaynes_cummings))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

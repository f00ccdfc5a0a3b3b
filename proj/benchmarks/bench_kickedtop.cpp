#include <benchmark/benchmark.h>

#include "kickedtop/kickedtop.hpp"

namespace {

using namespace qkt;

void BM_FloquetBuild(benchmark::State& state) {
  const SpinSystem system(static_cast<int>(state.range(0)));
  const CollectiveOperators ops = build_collective_ops(system);
  for (auto _ : state) {
    FloquetOperator floquet(ops, 3.0, std::numbers::pi / 2);
    benchmark::DoNotOptimize(floquet.eigenphases().data());
  }
}
BENCHMARK(BM_FloquetBuild)->Arg(20)->Arg(50)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

void BM_TimeSeries(benchmark::State& state) {
  const KickedTop top(static_cast<int>(state.range(0)), 3.0);
  for (auto _ : state) {
    const TimeSeries ts = time_series(top, 2.25, 0.63, 200);
    benchmark::DoNotOptimize(ts.concurrence.data());
  }
  state.SetItemsProcessed(state.iterations() * 201);
}
BENCHMARK(BM_TimeSeries)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PairReduction(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const CollectiveOperators ops = build_collective_ops(SpinSystem(qubits));
  const FloquetOperator floquet = floquet_operator(ops, 3.0, std::numbers::pi / 2);
  const SpinState psi = evolve(spin_coherent_state(ops, 1.1, 0.4), floquet, 25);
  for (auto _ : state) {
    const TwoQubitDensity rho = reduce_to_pair(moments(psi), qubits);
    benchmark::DoNotOptimize(concurrence(rho));
  }
}
BENCHMARK(BM_PairReduction)->Arg(50)->Arg(300);

void BM_Lyapunov(benchmark::State& state) {
  const PhasePoint start = PhasePoint::from_polar(2.25, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov(start, 3.0, static_cast<int>(state.range(0)), 100, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lyapunov)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_PhaseSpaceScan(benchmark::State& state) {
  const KickedTop top(20, 3.0);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ScanResult scan = phase_space_scan(top, 8, 8, 50, workers);
    benchmark::DoNotOptimize(scan.cells.data());
  }
}
BENCHMARK(BM_PhaseSpaceScan)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

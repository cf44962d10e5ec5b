#include <benchmark/benchmark.h>

#include <cmath>

#include "qchan/sweep.hpp"

namespace {

qchan::sweep::SweepSpec rank2_grid(std::size_t n) {
  qchan::sweep::SweepSpec spec;
  spec.family = qchan::sweep::Family::Rank2;
  spec.axes = {{0.0, M_PI, n}, {0.0, M_PI, n}};
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = rank2_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qchan::sweep::sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = rank2_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qchan::sweep::sweep_parallel(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

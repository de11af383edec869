#include <benchmark/benchmark.h>

#include "genloc/kernel.hpp"

namespace gk = genloc::kernel;

static void BM_BuildWindow(benchmark::State& state) {
  const auto spec = gk::WindowSpec::unit(2);
  for (auto _ : state) benchmark::DoNotOptimize(gk::build_window(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildWindow)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_KernelCoeffs(benchmark::State& state) {
  const auto window = gk::build_window(gk::WindowSpec::unit(2), 256);
  const gk::Coord n_max = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(gk::KernelCoeffs::build(window, n_max * n_max / 4 + 1, n_max));
}
BENCHMARK(BM_KernelCoeffs)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

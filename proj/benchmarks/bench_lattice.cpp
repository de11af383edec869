#include <benchmark/benchmark.h>

#include "genloc/lattice.hpp"

namespace gl = genloc::lattice;

static void BM_ShellTable(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  const gl::Coord bound = state.range(1);
  for (auto _ : state) {
    gl::ShellTable t(dim, bound);
    benchmark::DoNotOptimize(t.total_points());
  }
}
BENCHMARK(BM_ShellTable)->Args({2, 2304})->Args({3, 900})->Unit(benchmark::kMillisecond);

static void BM_BuildPartition(benchmark::State& state) {
  const gl::Coord k = state.range(0);
  const gl::ShellTable shells(3, (k + 1) * (k + 1) - 1);
  const gl::LatticePoint n{7, -3, 11};
  for (auto _ : state) benchmark::DoNotOptimize(gl::build_partition(n, k, shells));
}
BENCHMARK(BM_BuildPartition)->Arg(5)->Arg(15)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "genloc/series.hpp"

namespace gs = genloc::series;

static void BM_SphericalSum(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n_max = state.range(0);
  const auto f = gs::SpectralField::random(2, n_max, rng, true);
  const gs::TorusGrid grid(2, static_cast<int>(state.range(1)));
  const double lambda = static_cast<double>(n_max * n_max) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(gs::spherical_sum(f, lambda, grid));
}
BENCHMARK(BM_SphericalSum)->Args({16, 128})->Args({32, 256})->Unit(benchmark::kMillisecond);

static void BM_MaximalSum(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n_max = state.range(0);
  const auto f = gs::SpectralField::random(2, n_max, rng, true);
  const gs::TorusGrid grid(2, 128);
  const auto pts = gs::ball_points(grid, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(gs::maximal_sum(f, 2 * n_max * n_max + 1, pts));
}
BENCHMARK(BM_MaximalSum)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

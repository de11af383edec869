#include <benchmark/benchmark.h>

#include <cmath>

#include "genloc/integral.hpp"

namespace gi = genloc::integral;

static void BM_BallKernel(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0));
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gi::ball_kernel(x, 20.0, dim));
    x = x < 3.0 ? x + 0.01 : 0.01;
  }
}
BENCHMARK(BM_BallKernel)->Arg(1)->Arg(2)->Arg(3);

static void BM_PartialIntegral(benchmark::State& state) {
  const auto f = gi::CompactField::sample(2, 0.02, 1.0, 1.5, [](std::span<const double> y) {
    const double u = (std::hypot(y[0], y[1]) - 1.25) / 0.25;
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
  });
  const gi::Points pts{{0.0, 0.0}, {0.3, 0.1}};
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gi::partial_integral(f, lambda, pts));
}
BENCHMARK(BM_PartialIntegral)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_ThresholdProbe(benchmark::State& state) {
  gi::RieszSpec spec;
  spec.s = 2.0;
  spec.l = 1.5;
  const std::vector<double> x{0.5, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(gi::threshold_probe(spec, x, 4.0, 1.5, 8));
}
BENCHMARK(BM_ThresholdProbe)->Unit(benchmark::kMillisecond);

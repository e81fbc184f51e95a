#include <benchmark/benchmark.h>

#include "cvqkd/coherent_info.hpp"
#include "cvqkd/montecarlo.hpp"
#include "cvqkd/postselect.hpp"

namespace {

void BM_DeltaInfo(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::delta_info(0.5, 1.2, x));
    x += 1e-6;
  }
}
BENCHMARK(BM_DeltaInfo);

void BM_JointDensity(benchmark::State& state) {
  const cvqkd::ChannelParams params{0.5, 2.1};
  double x = -4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::joint_density(params, 1.0, x));
    x += 1e-6;
  }
}
BENCHMARK(BM_JointDensity);

void BM_KeyRate(benchmark::State& state) {
  const cvqkd::ChannelParams params{0.5, 2.1};
  const int n = static_cast<int>(state.range(0));
  const cvqkd::GridSpec grid{4.0, 4.0, n, 2 * n - 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::key_rate(params, grid));
  }
}
BENCHMARK(BM_KeyRate)->Arg(101)->Arg(201)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

void BM_RunSession(benchmark::State& state) {
  const cvqkd::ChannelParams params{0.5, 2.1};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::run_session(params, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RunSession)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BoundaryX(benchmark::State& state) {
  double amplitude = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::boundary_x(0.5, amplitude));
    amplitude = amplitude >= 3.5 ? 0.5 : amplitude + 1e-3;
  }
}
BENCHMARK(BM_BoundaryX);

}  // namespace

BENCHMARK_MAIN();

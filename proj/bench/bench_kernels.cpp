#include <benchmark/benchmark.h>

#include <vector>

#include "udb/geometry.hpp"
#include "udb/independence.hpp"
#include "udb/kernel_grid.hpp"

namespace {

void BM_SampleOmegaSerial(benchmark::State& state) {
  const udb::OmegaKernel k(static_cast<int>(state.range(0)));
  const auto t = udb::grid::uniform(0.0, 50.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(udb::grid::sample_omega_serial(k, t));
}

void BM_SampleOmegaParallel(benchmark::State& state) {
  const udb::OmegaKernel k(static_cast<int>(state.range(0)));
  const auto t = udb::grid::uniform(0.0, 50.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(udb::grid::sample_omega(k, t));
}

const std::vector<udb::RadialComponent> kProfile = {{0.5, 26.0}, {0.6, 40.0}, {0.7, 54.0}};

void BM_SampleProfileSerial(benchmark::State& state) {
  const udb::OmegaKernel k(static_cast<int>(state.range(0)));
  const auto t = udb::grid::uniform(0.0, 50.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(udb::grid::sample_profile_serial(k, kProfile, t));
}

void BM_SampleProfileParallel(benchmark::State& state) {
  const udb::OmegaKernel k(static_cast<int>(state.range(0)));
  const auto t = udb::grid::uniform(0.0, 50.0, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(udb::grid::sample_profile(k, kProfile, t));
}

void alpha_search(benchmark::State& state, bool parallel) {
  const udb::UnitDistanceGraph g = udb::build_johnson(10, 5, 2);
  udb::SearchOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(udb::max_independent_set(g, opt));
}

void BM_AlphaSerial(benchmark::State& state) { alpha_search(state, false); }
void BM_AlphaParallel(benchmark::State& state) { alpha_search(state, true); }

BENCHMARK(BM_SampleOmegaSerial)->Arg(4)->Arg(24);
BENCHMARK(BM_SampleOmegaParallel)->Arg(4)->Arg(24);
BENCHMARK(BM_SampleProfileSerial)->Arg(4)->Arg(24);
BENCHMARK(BM_SampleProfileParallel)->Arg(4)->Arg(24);
BENCHMARK(BM_AlphaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlphaParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "ymx/channel.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/state_sum.hpp"
#include "ymx/surface.hpp"
#include "ymx/weingarten.hpp"

using namespace ymx;

namespace {

ActionSpec wilson(double beta) {
  ActionSpec a;
  a.kind = ActionKind::Wilson;
  a.coupling = beta;
  return a;
}

void BM_WgTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(WgTable(n, 3));
}
BENCHMARK(BM_WgTable)->DenseRange(2, 6);

void BM_HaarSample(benchmark::State& state) {
  Rng rng(1, 0);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_sample(N, rng));
}
BENCHMARK(BM_HaarSample)->Arg(2)->Arg(4)->Arg(8);

void BM_CommutatorIntegral(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  WordSpec spec;
  spec.words = {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
  spec.labels = {HighestWeight({1}, {1}, N)};
  for (auto _ : state) benchmark::DoNotOptimize(character_word_integral(spec));
}
BENCHMARK(BM_CommutatorIntegral)->Arg(2)->Arg(3);

void BM_SurfaceExpansion(benchmark::State& state) {
  WordSpec spec;
  spec.words = {{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
  spec.labels = {HighestWeight({1}, {1}, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(surface_expansion(spec));
}
BENCHMARK(BM_SurfaceExpansion);

void BM_StateSum(benchmark::State& state) {
  const auto lat = build_lattice(2, {1, static_cast<int>(state.range(0))});
  const auto g = default_gauge(lat);
  const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
  for (auto _ : state) {
    clear_topological_cache();
    benchmark::DoNotOptimize(wilson_expectation_statesum(lat, g, loops, wilson(0.5), 2));
  }
}
BENCHMARK(BM_StateSum)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_DefectRatio(benchmark::State& state) {
  const auto lat = build_lattice(2, {1, 2});
  const auto g = default_gauge(lat);
  const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
  for (auto _ : state) benchmark::DoNotOptimize(defect_ratio(lat, g, loops, wilson(0.5), 2));
}
BENCHMARK(BM_DefectRatio)->Unit(benchmark::kMillisecond);

void BM_McLattice(benchmark::State& state) {
  const auto lat = build_lattice(2, {2, 2});
  const std::vector<LoopWord> loops{lat.plaquette(0).boundary};
  for (auto _ : state) benchmark::DoNotOptimize(mc_lattice_expectation(lat, loops, wilson(0.5), 2, 10000, 3));
}
BENCHMARK(BM_McLattice)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

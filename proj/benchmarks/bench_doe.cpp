#include <benchmark/benchmark.h>

#include "lvgp/doe.hpp"

namespace {

using namespace lvgp;

void BM_MaximinLhd(benchmark::State& state) {
  MaximinOptions options;
  options.budget = static_cast<int>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Design design = maximin_lhd(static_cast<int>(state.range(0)), 6, ++seed, options);
    benchmark::DoNotOptimize(design.maximin_score);
  }
}

}  // namespace

BENCHMARK(BM_MaximinLhd)
    ->Args({70, 1000})
    ->Args({70, 10000})
    ->Args({100, 10000})
    ->Unit(benchmark::kMillisecond);

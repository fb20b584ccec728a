#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "lvgp/fit.hpp"
#include "lvgp/predict.hpp"

namespace {

using namespace lvgp;

const FittedModel& fitted_mathfn1() {
  static const FittedModel model = [] {
    const auto rep = benchdata::replicate("mathfn1", 70);
    KernelConfig config;
    config.family = KernelFamily::LV2;
    FitOptions options;
    options.n_starts = 8;
    options.seed = 3;
    return fit(rep.train, config, options);
  }();
  return model;
}

void BM_PredictBatch(benchmark::State& state) {
  const auto& model = fitted_mathfn1();
  const auto rep = benchdata::replicate("mathfn1", 70);
  std::vector<MixedPoint> queries(rep.test_points.begin(),
                                  rep.test_points.begin() + state.range(0));
  for (auto _ : state) {
    const auto preds = predict_batch(model, queries);
    benchmark::DoNotOptimize(preds.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FitSmall(benchmark::State& state) {
  const auto rep = benchdata::replicate("mathfn1", static_cast<int>(state.range(0)));
  KernelConfig config;
  config.family = KernelFamily::LV2;
  FitOptions options;
  options.n_starts = 4;
  options.seed = 5;
  for (auto _ : state) {
    const FittedModel model = fit(rep.train, config, options);
    benchmark::DoNotOptimize(model.nll());
  }
}

}  // namespace

BENCHMARK(BM_PredictBatch)->Arg(64)->Arg(256);
BENCHMARK(BM_FitSmall)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "lvgp/likelihood.hpp"

namespace {

using namespace lvgp;

void BM_NllValue(benchmark::State& state, KernelFamily family, const char* problem) {
  const auto rep = benchdata::replicate(problem, static_cast<int>(state.range(0)));
  KernelConfig config;
  config.family = family;
  const KernelEngine engine(rep.train.schema(), config);
  const Likelihood lik(engine, pack_dataset(rep.train));
  const Eigen::VectorXd v = benchdata::mid_params(engine);
  for (auto _ : state) {
    const auto eval = lik.value(v);
    benchmark::DoNotOptimize(eval.value);
  }
}

void BM_NllGradient(benchmark::State& state, KernelFamily family, const char* problem) {
  const auto rep = benchdata::replicate(problem, static_cast<int>(state.range(0)));
  KernelConfig config;
  config.family = family;
  const KernelEngine engine(rep.train.schema(), config);
  const Likelihood lik(engine, pack_dataset(rep.train));
  const Eigen::VectorXd v = benchdata::mid_params(engine);
  Eigen::VectorXd grad(engine.num_params());
  for (auto _ : state) {
    const auto eval = lik.value_grad(v, grad);
    benchmark::DoNotOptimize(eval.value);
    benchmark::DoNotOptimize(grad.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_NllValue, lv2_mathfn1, lvgp::KernelFamily::LV2, "mathfn1")->Arg(70);
BENCHMARK_CAPTURE(BM_NllValue, adduc_mathfn2, lvgp::KernelFamily::AddUC, "mathfn2")->Arg(100);
BENCHMARK_CAPTURE(BM_NllGradient, lv2_mathfn1, lvgp::KernelFamily::LV2, "mathfn1")->Arg(70);
BENCHMARK_CAPTURE(BM_NllGradient, lv2_borehole12, lvgp::KernelFamily::LV2, "borehole12")->Arg(80);
BENCHMARK_CAPTURE(BM_NllGradient, adduc_mathfn2, lvgp::KernelFamily::AddUC, "mathfn2")->Arg(100);

#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "lvgp/likelihood.hpp"

namespace {

using namespace lvgp;

void BM_CorrMatrix(benchmark::State& state, KernelFamily family, const char* problem) {
  const auto rep = benchdata::replicate(problem, static_cast<int>(state.range(0)));
  KernelConfig config;
  config.family = family;
  const KernelEngine engine(rep.train.schema(), config);
  const PackedDataset data = pack_dataset(rep.train);
  const Eigen::VectorXd v = benchdata::mid_params(engine);
  Eigen::MatrixXd r;
  for (auto _ : state) {
    engine.fill_corr_matrix(data, v, r);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) / 2);
}

void BM_Factorization(benchmark::State& state) {
  const auto rep = benchdata::replicate("mathfn1", static_cast<int>(state.range(0)));
  KernelConfig config;
  config.family = KernelFamily::LV2;
  const KernelEngine engine(rep.train.schema(), config);
  const PackedDataset data = pack_dataset(rep.train);
  const Eigen::VectorXd v = benchdata::mid_params(engine);
  for (auto _ : state) {
    FactorizedCorr fac = build_corr_matrix(engine, data, v);
    benchmark::DoNotOptimize(fac.jitter);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CorrMatrix, lv2_mathfn1, lvgp::KernelFamily::LV2, "mathfn1")
    ->Arg(64)
    ->Arg(128);
BENCHMARK_CAPTURE(BM_CorrMatrix, uc_mathfn1, lvgp::KernelFamily::UC, "mathfn1")->Arg(64);
BENCHMARK_CAPTURE(BM_CorrMatrix, mc_mathfn1, lvgp::KernelFamily::MC, "mathfn1")->Arg(64);
BENCHMARK_CAPTURE(BM_CorrMatrix, adduc_mathfn2, lvgp::KernelFamily::AddUC, "mathfn2")->Arg(64);
BENCHMARK(BM_Factorization)->Arg(64)->Arg(128);

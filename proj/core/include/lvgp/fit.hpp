#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "lvgp/kernel_engine.hpp"
#include "lvgp/likelihood.hpp"
#include "lvgp/optimizer.hpp"
#include "lvgp/schema.hpp"

namespace lvgp {

struct FitOptions {
  int n_starts = 200;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 = hardware concurrency; results are independent of this
  BoxBfgsOptions local;
};

struct FitDiagnostics {
  int winning_start = -1;
  int iterations = 0;
  double grad_norm = 0.0;
  int n_starts = 0;
  int failed_starts = 0;  // starts whose factorization failed at the cap
};

// An immutable fitted GP: MLE hyperparameters plus everything needed to
// predict.  The factorization, prediction weights alpha = R^-1(y - mu 1),
// and R^-1 1 are rebuilt deterministically from (params, jitter, train), so
// a reloaded model predicts bit-identically.
class FittedModel {
 public:
  FittedModel(InputSchema schema, KernelConfig config, Eigen::VectorXd params,
              PackedDataset train, double jitter, double nll, FitDiagnostics diag);

  const InputSchema& schema() const { return engine_->schema(); }
  const KernelConfig& config() const { return engine_->config(); }
  const KernelEngine& engine() const { return *engine_; }
  const Eigen::VectorXd& params() const { return params_; }
  const PackedDataset& train() const { return train_; }
  double mu() const { return mu_; }
  double sigma2() const { return sigma2_; }
  double jitter() const { return jitter_; }
  double nll() const { return nll_; }
  const FitDiagnostics& diagnostics() const { return diag_; }

  const Eigen::LLT<Eigen::MatrixXd>& factor() const { return factor_.llt; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Eigen::VectorXd& rinv_ones() const { return rinv_ones_; }
  double ones_rinv_ones() const { return ones_rinv_ones_; }

 private:
  std::shared_ptr<const KernelEngine> engine_;
  Eigen::VectorXd params_;
  PackedDataset train_;
  double mu_ = 0.0;
  double sigma2_ = 0.0;
  double jitter_ = 0.0;
  double nll_ = 0.0;
  FitDiagnostics diag_;
  FactorizedCorr factor_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd rinv_ones_;
  double ones_rinv_ones_ = 0.0;
};

// The multi-start sequence is built from concatenated Latin hypercube
// blocks of this size (block b is seeded with derive_seed(seed, {b})), and
// fit() consumes the first n_starts points.  Runs with a larger n_starts
// therefore optimize a superset of the starts used by smaller runs.
inline constexpr int kStartBlockSize = 50;

std::vector<Eigen::VectorXd> fit_start_sequence(const KernelEngine& engine, int n_starts,
                                                std::uint64_t seed);

// Multi-start bounded quasi-Newton MLE.  Deterministic for fixed
// (data, config, options.n_starts, options.seed) regardless of thread count;
// the winner is the lowest final value with ties broken by start index.
FittedModel fit(const Dataset& data, const KernelConfig& config, const FitOptions& options = {});

}  // namespace lvgp

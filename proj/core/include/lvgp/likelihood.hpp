#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "lvgp/kernel_engine.hpp"
#include "lvgp/schema.hpp"

namespace lvgp {

// Closed-form maximizers of the constant-mean GP log-likelihood:
// mu = (1'R^-1 y)/(1'R^-1 1), sigma2 = (y - mu 1)'R^-1 (y - mu 1)/n.
struct ProfiledMoments {
  double mu = 0.0;
  double sigma2 = 0.0;
};

ProfiledMoments profile_mu_sigma(const Eigen::LLT<Eigen::MatrixXd>& r_factor,
                                 const Eigen::VectorXd& y);

struct FactorizedCorr {
  Eigen::MatrixXd r;               // correlation matrix with jitter on the diagonal
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;             // the jitter actually applied
};

// Assembles R(v) + jitter*I and factorizes it, escalating jitter per the
// config policy.  Throws SingularCorrelationError (carrying v) if the cap is
// reached without a successful factorization.
FactorizedCorr build_corr_matrix(const KernelEngine& engine, const PackedDataset& data,
                                 const Eigen::VectorXd& v);

// No-throw variant; returns false when the jitter cap is exhausted.
bool try_build_corr_matrix(const KernelEngine& engine, const PackedDataset& data,
                           const Eigen::VectorXd& v, FactorizedCorr& out);

// Value assigned in place of the likelihood when factorization fails at the
// jitter cap, keeping multi-start optimization well-defined.  A mild
// distance term steers line searches back toward the interior of the box.
inline constexpr double kPenaltyBase = 1e10;

// Profile negative log-likelihood (n/2)ln(2 pi sigma2) + (1/2)ln|R| + n/2
// and its analytic gradient, bound to one dataset.
class Likelihood {
 public:
  Likelihood(const KernelEngine& engine, PackedDataset data);

  struct Eval {
    double value = 0.0;
    double jitter = 0.0;
    bool penalized = false;
  };

  Eval value(const Eigen::VectorXd& v) const;
  // On success fills `grad` (resized to num_params).  When penalized the
  // gradient is zeroed; callers must not take a gradient step.
  Eval value_grad(const Eigen::VectorXd& v, Eigen::VectorXd& grad) const;

  const KernelEngine& engine() const { return *engine_; }
  const PackedDataset& data() const { return data_; }
  int sample_size() const { return static_cast<int>(data_.y.size()); }

 private:
  double penalty_value(const Eigen::VectorXd& v) const;

  const KernelEngine* engine_;
  PackedDataset data_;
  Eigen::VectorXd box_mid_;
};

// Spec-level wrappers.
double neg_profile_loglik(const KernelEngine& engine, const PackedDataset& data,
                          const Eigen::VectorXd& v);
// Throws SingularCorrelationError when factorization fails at the cap.
Eigen::VectorXd nll_gradient(const KernelEngine& engine, const PackedDataset& data,
                             const Eigen::VectorXd& v);

}  // namespace lvgp

#include "lvgp/likelihood.hpp"

#include <cmath>
#include <numbers>

#include "lvgp/errors.hpp"

namespace lvgp {

ProfiledMoments profile_mu_sigma(const Eigen::LLT<Eigen::MatrixXd>& r_factor,
                                 const Eigen::VectorXd& y) {
  const auto n = y.size();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd rinv_y = r_factor.solve(y);
  const Eigen::VectorXd rinv_1 = r_factor.solve(ones);
  const double denom = ones.dot(rinv_1);
  ProfiledMoments out;
  out.mu = ones.dot(rinv_y) / denom;
  const Eigen::VectorXd e = y - out.mu * ones;
  out.sigma2 = e.dot(r_factor.solve(e)) / static_cast<double>(n);
  if (!(out.sigma2 > 0.0)) {
    throw DegenerateDataError("profiled variance is zero; responses carry no signal");
  }
  return out;
}

bool try_build_corr_matrix(const KernelEngine& engine, const PackedDataset& data,
                           const Eigen::VectorXd& v, FactorizedCorr& out) {
  engine.fill_corr_matrix(data, v, out.r);
  const auto& policy = engine.config().jitter;
  const auto n = out.r.rows();
  double jitter = policy.initial;
  while (true) {
    Eigen::MatrixXd jittered = out.r;
    jittered.diagonal().array() += jitter;
    out.llt.compute(jittered);
    if (out.llt.info() == Eigen::Success) {
      out.r = std::move(jittered);
      out.jitter = jitter;
      return true;
    }
    if (jitter >= policy.cap) return false;
    jitter = std::min(jitter * policy.escalation, policy.cap);
  }
  (void)n;
}

FactorizedCorr build_corr_matrix(const KernelEngine& engine, const PackedDataset& data,
                                 const Eigen::VectorXd& v) {
  FactorizedCorr out;
  if (!try_build_corr_matrix(engine, data, v, out)) {
    throw SingularCorrelationError(
        "correlation matrix not positive definite at jitter cap " +
            std::to_string(engine.config().jitter.cap),
        v);
  }
  return out;
}

Likelihood::Likelihood(const KernelEngine& engine, PackedDataset data)
    : engine_(&engine), data_(std::move(data)) {
  box_mid_ = 0.5 * (engine.lower() + engine.upper());
}

double Likelihood::penalty_value(const Eigen::VectorXd& v) const {
  return kPenaltyBase + (v - box_mid_).squaredNorm();
}

namespace {

double nll_from_factorization(const FactorizedCorr& fac, const Eigen::VectorXd& y,
                              ProfiledMoments* moments_out = nullptr,
                              Eigen::VectorXd* alpha_out = nullptr) {
  const auto n = y.size();
  const ProfiledMoments pm = profile_mu_sigma(fac.llt, y);
  const double log_det = 2.0 * fac.llt.matrixLLT().diagonal().array().log().sum();
  const double nll = 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi * pm.sigma2) +
                     0.5 * log_det + 0.5 * static_cast<double>(n);
  if (moments_out != nullptr) *moments_out = pm;
  if (alpha_out != nullptr) {
    *alpha_out = fac.llt.solve(y - pm.mu * Eigen::VectorXd::Ones(n));
  }
  return nll;
}

}  // namespace

Likelihood::Eval Likelihood::value(const Eigen::VectorXd& v) const {
  FactorizedCorr fac;
  if (!try_build_corr_matrix(*engine_, data_, v, fac)) {
    return {penalty_value(v), engine_->config().jitter.cap, true};
  }
  return {nll_from_factorization(fac, data_.y), fac.jitter, false};
}

Likelihood::Eval Likelihood::value_grad(const Eigen::VectorXd& v, Eigen::VectorXd& grad) const {
  grad.setZero(engine_->num_params());
  FactorizedCorr fac;
  if (!try_build_corr_matrix(*engine_, data_, v, fac)) {
    return {penalty_value(v), engine_->config().jitter.cap, true};
  }
  ProfiledMoments pm;
  Eigen::VectorXd alpha;
  const double nll = nll_from_factorization(fac, data_.y, &pm, &alpha);

  // dNLL/dv_k = (1/2) tr(R^-1 dR_k) - (1/(2 sigma2)) a' dR_k a with a = alpha;
  // the derivative through the profiled mu vanishes (1'R^-1 e = 0).
  const auto n = data_.y.size();
  Eigen::MatrixXd weight =
      fac.llt.solve(Eigen::MatrixXd::Identity(n, n));  // R^-1
  weight.noalias() -= (alpha * alpha.transpose()) / pm.sigma2;
  engine_->accumulate_weighted_grad(data_, v, weight, fac.r, grad);
  return {nll, fac.jitter, false};
}

double neg_profile_loglik(const KernelEngine& engine, const PackedDataset& data,
                          const Eigen::VectorXd& v) {
  return Likelihood(engine, data).value(v).value;
}

Eigen::VectorXd nll_gradient(const KernelEngine& engine, const PackedDataset& data,
                             const Eigen::VectorXd& v) {
  Likelihood lik(engine, data);
  Eigen::VectorXd grad;
  const auto eval = lik.value_grad(v, grad);
  if (eval.penalized) {
    throw SingularCorrelationError("nll_gradient: factorization failed at jitter cap", v);
  }
  return grad;
}

}  // namespace lvgp

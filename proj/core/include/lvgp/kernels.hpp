#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "lvgp/schema.hpp"

namespace lvgp {

// Covariance families:
//  - LV1 / LV2: qualitative levels mapped to estimated 1D/2D latent
//    coordinates, Gaussian kernel over the joint (x, z) space.
//  - UC: unrestrictive cross-level correlation via the level-indicator
//    reformulation, one parameter per unordered level pair.
//  - MC: multiplicative correlation, tau(t,t') = exp(-(theta_t + theta_t')).
//  - AddUC: sum over factors of per-factor separable covariances.
//  - NumericOnly: plain Gaussian kernel, no qualitative factors.
enum class KernelFamily { LV1, LV2, UC, MC, AddUC, NumericOnly };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

// Diagonal inflation added to the correlation matrix before factorization.
// Starts at `initial`, multiplies by `escalation` on each Cholesky failure,
// gives up above `cap`.
struct JitterPolicy {
  double initial = 1e-8;
  double escalation = 10.0;
  double cap = 1e-4;
};

struct KernelConfig {
  KernelFamily family = KernelFamily::LV2;
  JitterPolicy jitter;
  // log10 correlation parameter bounds for quantitative inputs (and for the
  // indicator-feature parameters of UC/MC/AddUC, which enter the Gaussian
  // kernel the same way).
  double theta_lower = -3.0;
  double theta_upper = 3.0;
  // Search box for each free latent coordinate.
  double latent_lower = -2.0;
  double latent_upper = 2.0;
  // Bounds on the per-factor log-variance of the additive family.
  double log_var_lower = -10.0;
  double log_var_upper = 10.0;

  void check() const;
  bool is_latent() const { return family == KernelFamily::LV1 || family == KernelFamily::LV2; }
  int latent_dim() const { return family == KernelFamily::LV1 ? 1 : 2; }
};

// Estimated latent coordinates for every level of every factor.  Row l-1 of
// coords[j] is z^j(l).  Level 1 is pinned to the origin; in 2D mode level 2
// is pinned to the horizontal axis, leaving 2m-3 free values per factor
// (m-1 in 1D mode).
struct LatentMap {
  int dim = 2;  // 1 or 2
  std::vector<Eigen::MatrixXd> coords;  // factor j: m_j x dim

  int free_count(int factor) const {
    const auto m = static_cast<int>(coords[static_cast<size_t>(factor)].rows());
    return dim == 2 ? 2 * m - 3 : m - 1;
  }
};

// log10 of the Gaussian correlation parameters phi_i for the quantitative
// inputs: phi_i = 10^theta_i.
struct QuantCorrParams {
  Eigen::VectorXd theta;
};

// One nonnegative parameter per unordered level pair (l, l'), 1 <= l <= l'
// <= m-1, lexicographic order, m(m-1)/2 per factor.
struct UCParams {
  std::vector<Eigen::VectorXd> pair_phi;
};

// One nonnegative parameter per level, m per factor.
struct MCParams {
  std::vector<Eigen::VectorXd> level_theta;
};

// Per factor j: log-variance s_j (sigma_j^2 = exp(s_j)), its own
// quantitative parameters theta^(j), and its UC pair parameters.
struct AddUCParams {
  Eigen::VectorXd log_var;                  // q
  std::vector<Eigen::VectorXd> theta;       // q blocks of p
  std::vector<Eigen::VectorXd> pair_phi;    // q blocks of m_j(m_j-1)/2
};

// exp{-sum_i 10^theta_i (x_i - x'_i)^2}; arguments on a common (unit-cube)
// scale.
double gaussian_corr(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                     const QuantCorrParams& params);

// Gaussian kernel over (x, z(t)); no separate correlation parameter
// multiplies the latent distance.
double lv_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const LatentMap& latent);

// Level indicator W_{l,l'}(i): I_l(i) + I_{l'}(i) when l != l', I_l(i) when
// l == l'.
int indicator_W(int l, int l2, int i);

double uc_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const UCParams& uc, const InputSchema& schema);

double mc_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const MCParams& mc);

// Covariance (not correlation): sum_j exp(s_j) tau^j gaussian_corr_j.
double add_uc_cov(const MixedPoint& w, const MixedPoint& w2, const AddUCParams& params,
                  const InputSchema& schema);

// Number of UC pair parameters for a factor with m levels.
inline int uc_pair_count(int m) { return m * (m - 1) / 2; }

// Squared indicator distance (W_{l,l'}(t) - W_{l,l'}(t'))^2 summed against
// pair parameters; shared by UC and AddUC.  Pair parameters are ordered
// (1,1),(1,2),...,(1,m-1),(2,2),...,(m-1,m-1) with 1-based levels.
double uc_exponent(const Eigen::VectorXd& pair_phi, int m, int t, int t2);

}  // namespace lvgp

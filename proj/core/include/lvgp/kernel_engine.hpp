#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "lvgp/kernels.hpp"
#include "lvgp/schema.hpp"

namespace lvgp {

// One entry of the packed hyperparameter vector.
struct ParamSlot {
  enum class Kind {
    QuantTheta,    // log10 phi_i, quantitative input `dim`
    Latent,        // free latent coordinate (factor, level, coord)
    UcLogPhi,      // log10 of a UC pair parameter (factor, pair)
    McLogTheta,    // log10 of an MC level parameter (factor, level)
    AddLogVar,     // AddUC per-factor log-variance s_j
    AddQuantTheta, // AddUC per-factor quantitative theta (factor, dim)
    AddUcLogPhi,   // AddUC per-factor UC pair parameter (factor, pair)
  };

  Kind kind;
  int factor = -1;
  int level = -1;  // 1-based
  int coord = -1;  // 0 = z1, 1 = z2
  int dim = -1;
  int pair = -1;

  std::string name() const;
};

// Binds a schema and kernel config to a packed parameter layout and provides
// the numeric kernel paths used by fitting and prediction.  The packed
// vector contains only free parameters: pinned latent coordinates (z(1) at
// the origin, z2(2) = 0 in 2D mode) never occupy slots.  UC/MC/AddUC pair
// and level parameters are carried as log10 values so every multiplicative
// correlation parameter is searched on the same scale as the quantitative
// thetas.
class KernelEngine {
 public:
  KernelEngine(InputSchema schema, KernelConfig config);

  const InputSchema& schema() const { return schema_; }
  const KernelConfig& config() const { return config_; }
  int num_params() const { return static_cast<int>(slots_.size()); }
  const std::vector<ParamSlot>& slots() const { return slots_; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  bool in_bounds(const Eigen::VectorXd& v) const;

  // --- struct views of a packed vector -------------------------------
  QuantCorrParams quant_params(const Eigen::VectorXd& v) const;
  LatentMap latent_map(const Eigen::VectorXd& v) const;
  UCParams uc_params(const Eigen::VectorXd& v) const;       // raw phi = 10^slot
  MCParams mc_params(const Eigen::VectorXd& v) const;       // raw theta = 10^slot
  AddUCParams adduc_params(const Eigen::VectorXd& v) const; // raw phi pairs

  Eigen::VectorXd pack(const QuantCorrParams& qp) const;                       // NumericOnly
  Eigen::VectorXd pack(const QuantCorrParams& qp, const LatentMap& lm) const;  // LV
  Eigen::VectorXd pack(const QuantCorrParams& qp, const UCParams& uc) const;
  Eigen::VectorXd pack(const QuantCorrParams& qp, const MCParams& mc) const;
  Eigen::VectorXd pack(const AddUCParams& params) const;

  // --- numeric paths ---------------------------------------------------
  // Correlation between two normalized points (0-based levels).
  double corr(const Eigen::RowVectorXd& x1, const Eigen::RowVectorXi& t1,
              const Eigen::RowVectorXd& x2, const Eigen::RowVectorXi& t2,
              const Eigen::VectorXd& v) const;

  // Symmetric correlation matrix with unit diagonal (no jitter here); both
  // triangles filled from one evaluation per pair.
  void fill_corr_matrix(const PackedDataset& d, const Eigen::VectorXd& v,
                        Eigen::MatrixXd& r_out) const;

  // Correlations of one query point against every training row.
  void corr_vector(const PackedDataset& d, const Eigen::RowVectorXd& x,
                   const Eigen::RowVectorXi& t, const Eigen::VectorXd& v,
                   Eigen::VectorXd& r_out) const;

  // grad += sum_{i<j} weight(i,j) * dR_ij/dv.  `corr_matrix` must hold the
  // correlations this derivative is taken at (diagonal entries ignored).
  void accumulate_weighted_grad(const PackedDataset& d, const Eigen::VectorXd& v,
                                const Eigen::MatrixXd& weight,
                                const Eigen::MatrixXd& corr_matrix,
                                Eigen::VectorXd& grad) const;

 private:
  struct ParamCache;
  void build_cache(const Eigen::VectorXd& v, ParamCache& cache) const;
  double pair_corr(const ParamCache& cache, const Eigen::RowVectorXd& x1,
                   const Eigen::RowVectorXi& t1, const Eigen::RowVectorXd& x2,
                   const Eigen::RowVectorXi& t2) const;
  void build_layout();

  InputSchema schema_;
  KernelConfig config_;
  std::vector<ParamSlot> slots_;
  Eigen::VectorXd lower_, upper_;
  std::vector<int> factor_offset_;  // slot index where factor j's block starts
  // Per factor, per ordered level pair (t * m + t2): UC pair indices whose
  // indicator value differs between t and t2 (squared difference is 1).
  std::vector<std::vector<std::vector<int>>> uc_active_;
};

}  // namespace lvgp

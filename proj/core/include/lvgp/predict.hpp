#pragma once

#include <Eigen/Core>
#include <vector>

#include "lvgp/fit.hpp"
#include "lvgp/schema.hpp"

namespace lvgp {

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;  // >= 0 (clamped against roundoff)
};

// Kriging mean: mu + r(w)' alpha.
double predict_mean(const FittedModel& model, const MixedPoint& w);

// Mean plus the constant-trend universal-kriging variance
// sigma2 (1 - r'R^-1 r + (1 - 1'R^-1 r)^2 / (1'R^-1 1)), clamped at 0.
Prediction predict(const FittedModel& model, const MixedPoint& w);

// Identical to calling predict() per point.
std::vector<Prediction> predict_batch(const FittedModel& model,
                                      const std::vector<MixedPoint>& points);

// Estimated latent coordinates z^j(1..m_j) for one factor of an LV model:
// m_j x 2 in 2D mode (z(1) = origin, z2(2) = 0 exactly), m_j x 1 in 1D mode.
// Throws UnsupportedKernelError for non-LV models.
Eigen::MatrixXd latent_coordinates(const FittedModel& model, int factor);

}  // namespace lvgp

#include "lvgp/predict.hpp"

#include <algorithm>

#include "lvgp/errors.hpp"

namespace lvgp {

namespace {

struct QueryRows {
  Eigen::RowVectorXd x;
  Eigen::RowVectorXi t;
};

QueryRows to_rows(const FittedModel& model, const MixedPoint& w) {
  const MixedPoint norm = normalize(w, model.schema());
  QueryRows rows;
  rows.x.resize(static_cast<Eigen::Index>(norm.x.size()));
  rows.t.resize(static_cast<Eigen::Index>(norm.t.size()));
  for (Eigen::Index c = 0; c < rows.x.size(); ++c) rows.x(c) = norm.x[static_cast<size_t>(c)];
  for (Eigen::Index j = 0; j < rows.t.size(); ++j) rows.t(j) = norm.t[static_cast<size_t>(j)] - 1;
  return rows;
}

Prediction predict_rows(const FittedModel& model, const QueryRows& rows) {
  Eigen::VectorXd r;
  model.engine().corr_vector(model.train(), rows.x, rows.t, model.params(), r);
  Prediction out;
  out.mean = model.mu() + r.dot(model.alpha());
  const Eigen::VectorXd rinv_r = model.factor().solve(r);
  const double h = 1.0 - model.rinv_ones().dot(r);
  const double variance =
      model.sigma2() * (1.0 - r.dot(rinv_r) + h * h / model.ones_rinv_ones());
  out.variance = std::max(variance, 0.0);
  return out;
}

}  // namespace

double predict_mean(const FittedModel& model, const MixedPoint& w) {
  const QueryRows rows = to_rows(model, w);
  Eigen::VectorXd r;
  model.engine().corr_vector(model.train(), rows.x, rows.t, model.params(), r);
  return model.mu() + r.dot(model.alpha());
}

Prediction predict(const FittedModel& model, const MixedPoint& w) {
  return predict_rows(model, to_rows(model, w));
}

std::vector<Prediction> predict_batch(const FittedModel& model,
                                      const std::vector<MixedPoint>& points) {
  std::vector<Prediction> out;
  out.reserve(points.size());
  for (const auto& w : points) out.push_back(predict_rows(model, to_rows(model, w)));
  return out;
}

Eigen::MatrixXd latent_coordinates(const FittedModel& model, int factor) {
  if (!model.config().is_latent()) {
    throw UnsupportedKernelError("latent_coordinates: model does not use a latent-variable kernel");
  }
  if (factor < 0 || factor >= model.schema().num_qual()) {
    throw ValidationError("latent_coordinates: factor index out of range");
  }
  return model.engine().latent_map(model.params()).coords[static_cast<size_t>(factor)];
}

}  // namespace lvgp

#include "lvgp/model_io.hpp"

#include <cmath>
#include <fstream>

#include "internal_json.hpp"
#include "lvgp/errors.hpp"

namespace lvgp {

namespace {

constexpr const char* kFormatTag = "lvgp-model-v1";

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = arr.at(static_cast<size_t>(i)).get<double>();
  return v;
}

}  // namespace

void save_model(const FittedModel& model, const std::string& path) {
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["schema"] = detail::schema_to_json(model.schema());
  j["kernel"] = detail::kernel_config_to_json(model.config());
  j["params"] = vector_to_json(model.params());
  j["mu"] = model.mu();
  j["sigma2"] = model.sigma2();
  j["jitter"] = model.jitter();
  j["nll"] = model.nll();
  j["diagnostics"] = {{"winning_start", model.diagnostics().winning_start},
                      {"iterations", model.diagnostics().iterations},
                      {"grad_norm", model.diagnostics().grad_norm},
                      {"n_starts", model.diagnostics().n_starts},
                      {"failed_starts", model.diagnostics().failed_starts}};

  const auto& train = model.train();
  nlohmann::json x_rows = nlohmann::json::array();
  nlohmann::json t_rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < train.x.rows(); ++i) {
    nlohmann::json xr = nlohmann::json::array();
    for (Eigen::Index c = 0; c < train.x.cols(); ++c) xr.push_back(train.x(i, c));
    x_rows.push_back(std::move(xr));
    nlohmann::json tr = nlohmann::json::array();
    for (Eigen::Index c = 0; c < train.levels.cols(); ++c) tr.push_back(train.levels(i, c));
    t_rows.push_back(std::move(tr));
  }
  j["train"] = {{"x", std::move(x_rows)}, {"levels", std::move(t_rows)},
                {"y", vector_to_json(train.y)}};

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write model file '" + path + "'");
  out << j.dump(2) << "\n";
}

FittedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (j.value("format", "") != kFormatTag) {
    throw ValidationError(path + ": not an lvgp model file");
  }

  InputSchema schema = detail::schema_from_json(j.at("schema"));
  const KernelConfig config = detail::kernel_config_from_json(j.at("kernel"));
  Eigen::VectorXd params = vector_from_json(j.at("params"));

  const auto& train_json = j.at("train");
  const auto& x_rows = train_json.at("x");
  const auto& t_rows = train_json.at("levels");
  PackedDataset train;
  train.y = vector_from_json(train_json.at("y"));
  const auto n = static_cast<Eigen::Index>(x_rows.size());
  const auto p = static_cast<Eigen::Index>(n > 0 ? x_rows.at(0).size() : 0);
  const auto q = static_cast<Eigen::Index>(n > 0 ? t_rows.at(0).size() : 0);
  train.x.resize(n, p);
  train.levels.resize(n, q);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < p; ++c) {
      train.x(i, c) = x_rows.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>();
    }
    for (Eigen::Index c = 0; c < q; ++c) {
      train.levels(i, c) = t_rows.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<int>();
    }
  }

  FitDiagnostics diag;
  if (j.contains("diagnostics")) {
    const auto& d = j.at("diagnostics");
    diag.winning_start = d.value("winning_start", -1);
    diag.iterations = d.value("iterations", 0);
    diag.grad_norm = d.value("grad_norm", 0.0);
    diag.n_starts = d.value("n_starts", 0);
    diag.failed_starts = d.value("failed_starts", 0);
  }

  FittedModel model(std::move(schema), config, std::move(params), std::move(train),
                    j.at("jitter").get<double>(), j.at("nll").get<double>(), diag);

  // The profiled moments are recomputed from the rebuilt factorization; a
  // mismatch with the stored values means the file was edited or corrupted.
  const double mu_stored = j.at("mu").get<double>();
  const double sigma2_stored = j.at("sigma2").get<double>();
  if (std::abs(model.mu() - mu_stored) > 1e-8 * (1.0 + std::abs(mu_stored)) ||
      std::abs(model.sigma2() - sigma2_stored) > 1e-8 * (1.0 + sigma2_stored)) {
    throw ValidationError(path + ": stored moments disagree with the training data");
  }
  return model;
}

}  // namespace lvgp

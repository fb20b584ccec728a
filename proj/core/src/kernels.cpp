#include "lvgp/kernels.hpp"

#include <cmath>

namespace lvgp {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::LV1: return "LV1";
    case KernelFamily::LV2: return "LV2";
    case KernelFamily::UC: return "UC";
    case KernelFamily::MC: return "MC";
    case KernelFamily::AddUC: return "AddUC";
    case KernelFamily::NumericOnly: return "NumericOnly";
  }
  return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "LV1") return KernelFamily::LV1;
  if (name == "LV2") return KernelFamily::LV2;
  if (name == "UC") return KernelFamily::UC;
  if (name == "MC") return KernelFamily::MC;
  if (name == "AddUC" || name == "ADD_UC") return KernelFamily::AddUC;
  if (name == "NumericOnly" || name == "BNGP") return KernelFamily::NumericOnly;
  throw ValidationError("unknown kernel family '" + name + "'");
}

void KernelConfig::check() const {
  if (!(jitter.initial > 0.0)) throw ValidationError("jitter initial must be > 0");
  if (!(jitter.cap >= jitter.initial)) throw ValidationError("jitter cap must be >= initial");
  if (!(jitter.escalation > 1.0)) throw ValidationError("jitter escalation must be > 1");
  if (!(theta_lower < theta_upper)) throw ValidationError("theta bounds out of order");
  if (!(latent_lower < latent_upper)) throw ValidationError("latent bounds out of order");
  if (!(log_var_lower < log_var_upper)) throw ValidationError("log-variance bounds out of order");
}

namespace {

double quant_exponent(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                      const Eigen::VectorXd& theta) {
  if (x.size() != x2.size() || x.size() != theta.size()) {
    throw ValidationError("gaussian_corr: length mismatch");
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = x(i) - x2(i);
    s += std::pow(10.0, theta(i)) * d * d;
  }
  return s;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

double gaussian_corr(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                     const QuantCorrParams& params) {
  return std::exp(-quant_exponent(x, x2, params.theta));
}

double lv_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const LatentMap& latent) {
  if (w.t.size() != w2.t.size() || w.t.size() != latent.coords.size()) {
    throw ValidationError("lv_corr: factor count mismatch");
  }
  double s = quant_exponent(to_vec(w.x), to_vec(w2.x), params.theta);
  for (size_t j = 0; j < latent.coords.size(); ++j) {
    const auto& z = latent.coords[j];
    s += (z.row(w.t[j] - 1) - z.row(w2.t[j] - 1)).squaredNorm();
  }
  return std::exp(-s);
}

int indicator_W(int l, int l2, int i) {
  const int il = (i == l) ? 1 : 0;
  if (l == l2) return il;
  return il + ((i == l2) ? 1 : 0);
}

double uc_exponent(const Eigen::VectorXd& pair_phi, int m, int t, int t2) {
  if (pair_phi.size() != uc_pair_count(m)) {
    throw ValidationError("uc pair parameter count mismatch");
  }
  double s = 0.0;
  int k = 0;
  for (int l = 1; l <= m - 1; ++l) {
    for (int l2 = l; l2 <= m - 1; ++l2, ++k) {
      const int d = indicator_W(l, l2, t) - indicator_W(l, l2, t2);
      s += pair_phi(k) * static_cast<double>(d * d);
    }
  }
  return s;
}

double uc_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const UCParams& uc, const InputSchema& schema) {
  if (w.t.size() != w2.t.size() ||
      w.t.size() != static_cast<size_t>(schema.num_qual()) ||
      uc.pair_phi.size() != static_cast<size_t>(schema.num_qual())) {
    throw ValidationError("uc_corr: factor count mismatch");
  }
  double s = quant_exponent(to_vec(w.x), to_vec(w2.x), params.theta);
  for (int j = 0; j < schema.num_qual(); ++j) {
    s += uc_exponent(uc.pair_phi[static_cast<size_t>(j)], schema.num_levels(j),
                     w.t[static_cast<size_t>(j)], w2.t[static_cast<size_t>(j)]);
  }
  return std::exp(-s);
}

double mc_corr(const MixedPoint& w, const MixedPoint& w2, const QuantCorrParams& params,
               const MCParams& mc) {
  if (w.t.size() != w2.t.size() || w.t.size() != mc.level_theta.size()) {
    throw ValidationError("mc_corr: factor count mismatch");
  }
  double s = quant_exponent(to_vec(w.x), to_vec(w2.x), params.theta);
  for (size_t j = 0; j < mc.level_theta.size(); ++j) {
    const int t = w.t[j];
    const int t2 = w2.t[j];
    if (t != t2) {
      s += mc.level_theta[j](t - 1) + mc.level_theta[j](t2 - 1);
    }
  }
  return std::exp(-s);
}

double add_uc_cov(const MixedPoint& w, const MixedPoint& w2, const AddUCParams& params,
                  const InputSchema& schema) {
  const int q = schema.num_qual();
  if (q < 1) throw ValidationError("add_uc_cov: needs at least one qualitative factor");
  if (w.t.size() != static_cast<size_t>(q) || w2.t.size() != static_cast<size_t>(q) ||
      params.log_var.size() != q ||
      params.theta.size() != static_cast<size_t>(q) ||
      params.pair_phi.size() != static_cast<size_t>(q)) {
    throw ValidationError("add_uc_cov: factor count mismatch");
  }
  const Eigen::VectorXd x = to_vec(w.x);
  const Eigen::VectorXd x2 = to_vec(w2.x);
  double total = 0.0;
  for (int j = 0; j < q; ++j) {
    const auto ju = static_cast<size_t>(j);
    const double tau_exp = uc_exponent(params.pair_phi[ju], schema.num_levels(j),
                                       w.t[ju], w2.t[ju]);
    const double g_exp = quant_exponent(x, x2, params.theta[ju]);
    total += std::exp(params.log_var(j) - tau_exp - g_exp);
  }
  return total;
}

}  // namespace lvgp

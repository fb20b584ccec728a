#include "lvgp/kernel_engine.hpp"

#include <cmath>

namespace lvgp {

namespace {
constexpr double kLn10 = 2.302585092994045684;
}

std::string ParamSlot::name() const {
  switch (kind) {
    case Kind::QuantTheta:
      return "theta[" + std::to_string(dim + 1) + "]";
    case Kind::Latent:
      return "z" + std::to_string(coord + 1) + "[f" + std::to_string(factor + 1) +
             ",l" + std::to_string(level) + "]";
    case Kind::UcLogPhi:
      return "uc[f" + std::to_string(factor + 1) + ",p" + std::to_string(pair + 1) + "]";
    case Kind::McLogTheta:
      return "mc[f" + std::to_string(factor + 1) + ",l" + std::to_string(level) + "]";
    case Kind::AddLogVar:
      return "add.s[f" + std::to_string(factor + 1) + "]";
    case Kind::AddQuantTheta:
      return "add.theta[f" + std::to_string(factor + 1) + "," + std::to_string(dim + 1) + "]";
    case Kind::AddUcLogPhi:
      return "add.uc[f" + std::to_string(factor + 1) + ",p" + std::to_string(pair + 1) + "]";
  }
  return "?";
}

KernelEngine::KernelEngine(InputSchema schema, KernelConfig config)
    : schema_(std::move(schema)), config_(config) {
  config_.check();
  const int q = schema_.num_qual();
  if (config_.family == KernelFamily::NumericOnly) {
    if (q != 0) {
      throw ValidationError("NumericOnly kernel requires a schema without qualitative factors");
    }
  } else if (q < 1) {
    throw ValidationError(to_string(config_.family) + " kernel requires at least one qualitative factor");
  }
  build_layout();

  if (config_.family == KernelFamily::UC || config_.family == KernelFamily::AddUC) {
    uc_active_.resize(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
      const int m = schema_.num_levels(j);
      auto& table = uc_active_[static_cast<size_t>(j)];
      table.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
      for (int t = 0; t < m; ++t) {
        for (int t2 = 0; t2 < m; ++t2) {
          auto& entry = table[static_cast<size_t>(t * m + t2)];
          int k = 0;
          for (int l = 1; l <= m - 1; ++l) {
            for (int l2 = l; l2 <= m - 1; ++l2, ++k) {
              if (indicator_W(l, l2, t + 1) != indicator_W(l, l2, t2 + 1)) {
                entry.push_back(k);
              }
            }
          }
        }
      }
    }
  }
}

void KernelEngine::build_layout() {
  const int p = schema_.num_quant();
  const int q = schema_.num_qual();
  slots_.clear();
  factor_offset_.assign(static_cast<size_t>(q), 0);

  auto add_slot = [&](ParamSlot slot, double lo, double hi) {
    slots_.push_back(slot);
    lower_.conservativeResize(static_cast<Eigen::Index>(slots_.size()));
    upper_.conservativeResize(static_cast<Eigen::Index>(slots_.size()));
    lower_(static_cast<Eigen::Index>(slots_.size()) - 1) = lo;
    upper_(static_cast<Eigen::Index>(slots_.size()) - 1) = hi;
  };
  auto theta_slot = [&](ParamSlot::Kind kind, int factor, int dim) {
    ParamSlot s{kind};
    s.factor = factor;
    s.dim = dim;
    add_slot(s, config_.theta_lower, config_.theta_upper);
  };

  const auto family = config_.family;
  if (family != KernelFamily::AddUC) {
    for (int c = 0; c < p; ++c) theta_slot(ParamSlot::Kind::QuantTheta, -1, c);
  }

  for (int j = 0; j < q; ++j) {
    factor_offset_[static_cast<size_t>(j)] = static_cast<int>(slots_.size());
    const int m = schema_.num_levels(j);
    switch (family) {
      case KernelFamily::LV1:
        for (int l = 2; l <= m; ++l) {
          ParamSlot s{ParamSlot::Kind::Latent};
          s.factor = j;
          s.level = l;
          s.coord = 0;
          add_slot(s, config_.latent_lower, config_.latent_upper);
        }
        break;
      case KernelFamily::LV2:
        for (int l = 2; l <= m; ++l) {
          for (int c = 0; c < (l == 2 ? 1 : 2); ++c) {
            ParamSlot s{ParamSlot::Kind::Latent};
            s.factor = j;
            s.level = l;
            s.coord = c;
            add_slot(s, config_.latent_lower, config_.latent_upper);
          }
        }
        break;
      case KernelFamily::UC:
        for (int k = 0; k < uc_pair_count(m); ++k) {
          ParamSlot s{ParamSlot::Kind::UcLogPhi};
          s.factor = j;
          s.pair = k;
          add_slot(s, config_.theta_lower, config_.theta_upper);
        }
        break;
      case KernelFamily::MC:
        for (int l = 1; l <= m; ++l) {
          ParamSlot s{ParamSlot::Kind::McLogTheta};
          s.factor = j;
          s.level = l;
          add_slot(s, config_.theta_lower, config_.theta_upper);
        }
        break;
      case KernelFamily::AddUC: {
        ParamSlot s{ParamSlot::Kind::AddLogVar};
        s.factor = j;
        add_slot(s, config_.log_var_lower, config_.log_var_upper);
        for (int c = 0; c < p; ++c) theta_slot(ParamSlot::Kind::AddQuantTheta, j, c);
        for (int k = 0; k < uc_pair_count(m); ++k) {
          ParamSlot s2{ParamSlot::Kind::AddUcLogPhi};
          s2.factor = j;
          s2.pair = k;
          add_slot(s2, config_.theta_lower, config_.theta_upper);
        }
        break;
      }
      case KernelFamily::NumericOnly:
        break;
    }
  }
}

bool KernelEngine::in_bounds(const Eigen::VectorXd& v) const {
  if (v.size() != num_params()) return false;
  return (v.array() >= lower_.array()).all() && (v.array() <= upper_.array()).all();
}

// ---------------------------------------------------------------------------
// struct views

QuantCorrParams KernelEngine::quant_params(const Eigen::VectorXd& v) const {
  if (config_.family == KernelFamily::AddUC) {
    throw UnsupportedKernelError("AddUC has per-factor quantitative parameters");
  }
  return QuantCorrParams{v.head(schema_.num_quant())};
}

LatentMap KernelEngine::latent_map(const Eigen::VectorXd& v) const {
  if (!config_.is_latent()) {
    throw UnsupportedKernelError("latent map requested from a non-latent kernel");
  }
  LatentMap lm;
  lm.dim = config_.latent_dim();
  lm.coords.reserve(static_cast<size_t>(schema_.num_qual()));
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const int m = schema_.num_levels(j);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m, lm.dim);
    int off = factor_offset_[static_cast<size_t>(j)];
    if (lm.dim == 1) {
      for (int l = 2; l <= m; ++l) z(l - 1, 0) = v(off++);
    } else {
      if (m >= 2) z(1, 0) = v(off++);
      for (int l = 3; l <= m; ++l) {
        z(l - 1, 0) = v(off++);
        z(l - 1, 1) = v(off++);
      }
    }
    lm.coords.push_back(std::move(z));
  }
  return lm;
}

UCParams KernelEngine::uc_params(const Eigen::VectorXd& v) const {
  if (config_.family != KernelFamily::UC) {
    throw UnsupportedKernelError("UC parameters requested from a non-UC kernel");
  }
  UCParams uc;
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const int off = factor_offset_[static_cast<size_t>(j)];
    const int count = uc_pair_count(schema_.num_levels(j));
    uc.pair_phi.push_back(
        v.segment(off, count).array().unaryExpr([](double s) { return std::pow(10.0, s); }).matrix());
  }
  return uc;
}

MCParams KernelEngine::mc_params(const Eigen::VectorXd& v) const {
  if (config_.family != KernelFamily::MC) {
    throw UnsupportedKernelError("MC parameters requested from a non-MC kernel");
  }
  MCParams mc;
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const int off = factor_offset_[static_cast<size_t>(j)];
    const int m = schema_.num_levels(j);
    mc.level_theta.push_back(
        v.segment(off, m).array().unaryExpr([](double s) { return std::pow(10.0, s); }).matrix());
  }
  return mc;
}

AddUCParams KernelEngine::adduc_params(const Eigen::VectorXd& v) const {
  if (config_.family != KernelFamily::AddUC) {
    throw UnsupportedKernelError("AddUC parameters requested from a non-AddUC kernel");
  }
  AddUCParams out;
  const int p = schema_.num_quant();
  const int q = schema_.num_qual();
  out.log_var.resize(q);
  for (int j = 0; j < q; ++j) {
    int off = factor_offset_[static_cast<size_t>(j)];
    out.log_var(j) = v(off++);
    out.theta.push_back(v.segment(off, p));
    off += p;
    const int count = uc_pair_count(schema_.num_levels(j));
    out.pair_phi.push_back(
        v.segment(off, count).array().unaryExpr([](double s) { return std::pow(10.0, s); }).matrix());
  }
  return out;
}

namespace {
double checked_log10(double raw, const char* what) {
  if (!(raw > 0.0) || !std::isfinite(raw)) {
    throw ValidationError(std::string(what) + ": value must be positive and finite to pack");
  }
  return std::log10(raw);
}
}  // namespace

Eigen::VectorXd KernelEngine::pack(const QuantCorrParams& qp) const {
  if (config_.family != KernelFamily::NumericOnly) {
    throw UnsupportedKernelError("theta-only packing is for NumericOnly kernels");
  }
  if (qp.theta.size() != schema_.num_quant()) throw ValidationError("pack: theta length mismatch");
  return qp.theta;
}

Eigen::VectorXd KernelEngine::pack(const QuantCorrParams& qp, const LatentMap& lm) const {
  if (!config_.is_latent()) throw UnsupportedKernelError("latent packing is for LV kernels");
  if (lm.dim != config_.latent_dim()) throw ValidationError("pack: latent dimension mismatch");
  Eigen::VectorXd v(num_params());
  v.head(schema_.num_quant()) = qp.theta;
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const auto& z = lm.coords[static_cast<size_t>(j)];
    const int m = schema_.num_levels(j);
    if (z.rows() != m || z.cols() != lm.dim) throw ValidationError("pack: latent shape mismatch");
    int off = factor_offset_[static_cast<size_t>(j)];
    if (lm.dim == 1) {
      for (int l = 2; l <= m; ++l) v(off++) = z(l - 1, 0);
    } else {
      v(off++) = z(1, 0);
      for (int l = 3; l <= m; ++l) {
        v(off++) = z(l - 1, 0);
        v(off++) = z(l - 1, 1);
      }
    }
  }
  return v;
}

Eigen::VectorXd KernelEngine::pack(const QuantCorrParams& qp, const UCParams& uc) const {
  if (config_.family != KernelFamily::UC) throw UnsupportedKernelError("UC packing is for UC kernels");
  Eigen::VectorXd v(num_params());
  v.head(schema_.num_quant()) = qp.theta;
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const auto& phi = uc.pair_phi[static_cast<size_t>(j)];
    const int off = factor_offset_[static_cast<size_t>(j)];
    for (int k = 0; k < phi.size(); ++k) v(off + k) = checked_log10(phi(k), "uc pair");
  }
  return v;
}

Eigen::VectorXd KernelEngine::pack(const QuantCorrParams& qp, const MCParams& mc) const {
  if (config_.family != KernelFamily::MC) throw UnsupportedKernelError("MC packing is for MC kernels");
  Eigen::VectorXd v(num_params());
  v.head(schema_.num_quant()) = qp.theta;
  for (int j = 0; j < schema_.num_qual(); ++j) {
    const auto& theta = mc.level_theta[static_cast<size_t>(j)];
    const int off = factor_offset_[static_cast<size_t>(j)];
    for (int k = 0; k < theta.size(); ++k) v(off + k) = checked_log10(theta(k), "mc level");
  }
  return v;
}

Eigen::VectorXd KernelEngine::pack(const AddUCParams& params) const {
  if (config_.family != KernelFamily::AddUC) {
    throw UnsupportedKernelError("AddUC packing is for AddUC kernels");
  }
  Eigen::VectorXd v(num_params());
  const int p = schema_.num_quant();
  for (int j = 0; j < schema_.num_qual(); ++j) {
    int off = factor_offset_[static_cast<size_t>(j)];
    v(off++) = params.log_var(j);
    v.segment(off, p) = params.theta[static_cast<size_t>(j)];
    off += p;
    const auto& phi = params.pair_phi[static_cast<size_t>(j)];
    for (int k = 0; k < phi.size(); ++k) v(off + k) = checked_log10(phi(k), "adduc pair");
  }
  return v;
}

// ---------------------------------------------------------------------------
// numeric paths

struct KernelEngine::ParamCache {
  Eigen::VectorXd phi;                        // 10^theta
  std::vector<Eigen::MatrixXd> latent;        // LV coordinates
  std::vector<Eigen::VectorXd> uc_raw;        // UC 10^slot per factor
  std::vector<Eigen::VectorXd> mc_raw;        // MC 10^slot per factor
  std::vector<Eigen::MatrixXd> factor_expo;   // m x m exponent contribution
  // AddUC
  Eigen::VectorXd add_w;                      // exp(s_j)
  double add_total = 0.0;
  std::vector<Eigen::VectorXd> add_phi;       // per factor 10^theta
  std::vector<Eigen::VectorXd> add_uc_raw;    // per factor pair 10^slot
  std::vector<Eigen::MatrixXd> add_tau;       // per factor m x m
};

void KernelEngine::build_cache(const Eigen::VectorXd& v, ParamCache& cache) const {
  if (v.size() != num_params()) throw ValidationError("kernel parameter vector has wrong length");
  const int p = schema_.num_quant();
  const int q = schema_.num_qual();
  const auto family = config_.family;
  auto pow10 = [](double s) { return std::pow(10.0, s); };

  if (family != KernelFamily::AddUC) {
    cache.phi = v.head(p).array().unaryExpr(pow10).matrix();
  }

  if (config_.is_latent()) {
    const LatentMap lm = latent_map(v);
    cache.latent = lm.coords;
    cache.factor_expo.resize(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
      const auto& z = cache.latent[static_cast<size_t>(j)];
      const int m = schema_.num_levels(j);
      auto& expo = cache.factor_expo[static_cast<size_t>(j)];
      expo.resize(m, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) expo(a, b) = (z.row(a) - z.row(b)).squaredNorm();
      }
    }
  } else if (family == KernelFamily::UC) {
    cache.uc_raw.resize(static_cast<size_t>(q));
    cache.factor_expo.resize(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
      const int m = schema_.num_levels(j);
      const int off = factor_offset_[static_cast<size_t>(j)];
      auto& raw = cache.uc_raw[static_cast<size_t>(j)];
      raw = v.segment(off, uc_pair_count(m)).array().unaryExpr(pow10).matrix();
      auto& expo = cache.factor_expo[static_cast<size_t>(j)];
      expo.setZero(m, m);
      const auto& table = uc_active_[static_cast<size_t>(j)];
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          double s = 0.0;
          for (int k : table[static_cast<size_t>(a * m + b)]) s += raw(k);
          expo(a, b) = s;
        }
      }
    }
  } else if (family == KernelFamily::MC) {
    cache.mc_raw.resize(static_cast<size_t>(q));
    cache.factor_expo.resize(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
      const int m = schema_.num_levels(j);
      const int off = factor_offset_[static_cast<size_t>(j)];
      auto& raw = cache.mc_raw[static_cast<size_t>(j)];
      raw = v.segment(off, m).array().unaryExpr(pow10).matrix();
      auto& expo = cache.factor_expo[static_cast<size_t>(j)];
      expo.setZero(m, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          if (a != b) expo(a, b) = raw(a) + raw(b);
        }
      }
    }
  } else if (family == KernelFamily::AddUC) {
    cache.add_w.resize(q);
    cache.add_phi.resize(static_cast<size_t>(q));
    cache.add_uc_raw.resize(static_cast<size_t>(q));
    cache.add_tau.resize(static_cast<size_t>(q));
    cache.add_total = 0.0;
    for (int j = 0; j < q; ++j) {
      const int m = schema_.num_levels(j);
      int off = factor_offset_[static_cast<size_t>(j)];
      cache.add_w(j) = std::exp(v(off++));
      cache.add_total += cache.add_w(j);
      cache.add_phi[static_cast<size_t>(j)] = v.segment(off, p).array().unaryExpr(pow10).matrix();
      off += p;
      auto& raw = cache.add_uc_raw[static_cast<size_t>(j)];
      raw = v.segment(off, uc_pair_count(m)).array().unaryExpr(pow10).matrix();
      auto& tau = cache.add_tau[static_cast<size_t>(j)];
      tau.resize(m, m);
      const auto& table = uc_active_[static_cast<size_t>(j)];
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          double s = 0.0;
          for (int k : table[static_cast<size_t>(a * m + b)]) s += raw(k);
          tau(a, b) = std::exp(-s);
        }
      }
    }
  }
}

double KernelEngine::pair_corr(const ParamCache& cache, const Eigen::RowVectorXd& x1,
                               const Eigen::RowVectorXi& t1, const Eigen::RowVectorXd& x2,
                               const Eigen::RowVectorXi& t2) const {
  const int p = schema_.num_quant();
  const int q = schema_.num_qual();
  if (config_.family == KernelFamily::AddUC) {
    double total = 0.0;
    for (int j = 0; j < q; ++j) {
      const auto ju = static_cast<size_t>(j);
      double e = 0.0;
      for (int c = 0; c < p; ++c) {
        const double d = x1(c) - x2(c);
        e += cache.add_phi[ju](c) * d * d;
      }
      total += cache.add_w(j) * cache.add_tau[ju](t1(j), t2(j)) * std::exp(-e);
    }
    return total / cache.add_total;
  }
  double e = 0.0;
  for (int c = 0; c < p; ++c) {
    const double d = x1(c) - x2(c);
    e += cache.phi(c) * d * d;
  }
  for (int j = 0; j < q; ++j) {
    e += cache.factor_expo[static_cast<size_t>(j)](t1(j), t2(j));
  }
  return std::exp(-e);
}

double KernelEngine::corr(const Eigen::RowVectorXd& x1, const Eigen::RowVectorXi& t1,
                          const Eigen::RowVectorXd& x2, const Eigen::RowVectorXi& t2,
                          const Eigen::VectorXd& v) const {
  ParamCache cache;
  build_cache(v, cache);
  return pair_corr(cache, x1, t1, x2, t2);
}

void KernelEngine::fill_corr_matrix(const PackedDataset& d, const Eigen::VectorXd& v,
                                    Eigen::MatrixXd& r_out) const {
  ParamCache cache;
  build_cache(v, cache);
  const auto n = d.x.rows();
  r_out.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r_out(j, j) = 1.0;
    const Eigen::RowVectorXd xj = d.x.row(j);
    const Eigen::RowVectorXi tj = d.levels.row(j);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double value = pair_corr(cache, d.x.row(i), d.levels.row(i), xj, tj);
      r_out(i, j) = value;
      r_out(j, i) = value;
    }
  }
}

void KernelEngine::corr_vector(const PackedDataset& d, const Eigen::RowVectorXd& x,
                               const Eigen::RowVectorXi& t, const Eigen::VectorXd& v,
                               Eigen::VectorXd& r_out) const {
  ParamCache cache;
  build_cache(v, cache);
  const auto n = d.x.rows();
  r_out.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r_out(i) = pair_corr(cache, d.x.row(i), d.levels.row(i), x, t);
  }
}

void KernelEngine::accumulate_weighted_grad(const PackedDataset& d, const Eigen::VectorXd& v,
                                            const Eigen::MatrixXd& weight,
                                            const Eigen::MatrixXd& corr_matrix,
                                            Eigen::VectorXd& grad) const {
  ParamCache cache;
  build_cache(v, cache);
  const int n = static_cast<int>(d.x.rows());
  const int p = schema_.num_quant();
  const int q = schema_.num_qual();
  const auto family = config_.family;

  // Latent slot index for (factor, 1-based level, coord); -1 when pinned.
  auto latent_slot = [&](int j, int level, int coord) -> int {
    if (level == 1) return -1;
    const int off = factor_offset_[static_cast<size_t>(j)];
    if (config_.latent_dim() == 1) return coord == 0 ? off + (level - 2) : -1;
    if (level == 2) return coord == 0 ? off : -1;
    return off + 1 + 2 * (level - 3) + coord;
  };

  for (int jcol = 0; jcol < n; ++jcol) {
    for (int irow = jcol + 1; irow < n; ++irow) {
      const double w = weight(irow, jcol);
      if (w == 0.0) continue;

      if (family == KernelFamily::AddUC) {
        const double s_total = cache.add_total;
        const double r_ij = corr_matrix(irow, jcol);
        for (int a = 0; a < q; ++a) {
          const auto au = static_cast<size_t>(a);
          double e = 0.0;
          for (int c = 0; c < p; ++c) {
            const double dx = d.x(irow, c) - d.x(jcol, c);
            e += cache.add_phi[au](c) * dx * dx;
          }
          const double g_a = std::exp(-e);
          const int ta = d.levels(irow, a);
          const int tb = d.levels(jcol, a);
          const double tau_a = cache.add_tau[au](ta, tb);
          const double k_a = cache.add_w(a) * tau_a * g_a;
          int off = factor_offset_[au];
          // d/ds_a of K/S with K = sum_a k_a and S = sum_a w_a
          grad(off) += w * (cache.add_w(a) / s_total) * (tau_a * g_a - r_ij);
          ++off;
          for (int c = 0; c < p; ++c) {
            const double dx = d.x(irow, c) - d.x(jcol, c);
            grad(off + c) += -w * (k_a / s_total) * kLn10 * cache.add_phi[au](c) * dx * dx;
          }
          off += p;
          if (ta != tb) {
            const int m = schema_.num_levels(a);
            for (int k : uc_active_[au][static_cast<size_t>(ta * m + tb)]) {
              grad(off + k) += -w * (k_a / s_total) * kLn10 * cache.add_uc_raw[au](k);
            }
          }
        }
        continue;
      }

      const double base = -w * corr_matrix(irow, jcol);
      for (int c = 0; c < p; ++c) {
        const double dx = d.x(irow, c) - d.x(jcol, c);
        grad(c) += base * kLn10 * cache.phi(c) * dx * dx;
      }
      for (int j = 0; j < q; ++j) {
        const int ta = d.levels(irow, j);
        const int tb = d.levels(jcol, j);
        if (ta == tb) continue;
        const auto ju = static_cast<size_t>(j);
        if (config_.is_latent()) {
          const auto& z = cache.latent[ju];
          for (int c = 0; c < config_.latent_dim(); ++c) {
            const double dz = z(ta, c) - z(tb, c);
            const int sa = latent_slot(j, ta + 1, c);
            const int sb = latent_slot(j, tb + 1, c);
            if (sa >= 0) grad(sa) += base * 2.0 * dz;
            if (sb >= 0) grad(sb) += base * -2.0 * dz;
          }
        } else if (family == KernelFamily::UC) {
          const int m = schema_.num_levels(j);
          const int off = factor_offset_[ju];
          for (int k : uc_active_[ju][static_cast<size_t>(ta * m + tb)]) {
            grad(off + k) += base * kLn10 * cache.uc_raw[ju](k);
          }
        } else if (family == KernelFamily::MC) {
          const int off = factor_offset_[ju];
          grad(off + ta) += base * kLn10 * cache.mc_raw[ju](ta);
          grad(off + tb) += base * kLn10 * cache.mc_raw[ju](tb);
        }
      }
    }
  }
}

}  // namespace lvgp

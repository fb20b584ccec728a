#include "lvgp/doe.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <vector>

#include "lvgp/errors.hpp"
#include "lvgp/rng.hpp"
#include "lvgp/schema_io.hpp"

namespace lvgp {

namespace {

double min_pairwise_sq(const Eigen::MatrixXd& x) {
  const auto n = x.rows();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      best = std::min(best, (x.row(i) - x.row(j)).squaredNorm());
    }
  }
  return best;
}

}  // namespace

Design maximin_lhd(int n, int p, std::uint64_t seed, const MaximinOptions& options) {
  if (n < 1 || p < 1) throw ValidationError("maximin_lhd: n and p must be >= 1");
  Rng rng(seed);

  Design design;
  design.seed = seed;
  design.x.resize(n, p);
  design.levels.resize(n, 0);

  std::vector<int> perm(static_cast<size_t>(n));
  for (int c = 0; c < p; ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    for (int i = 0; i < n; ++i) {
      const double within = options.jitter_within_strata ? rng.uniform01() : 0.5;
      design.x(i, c) = (static_cast<double>(perm[static_cast<size_t>(i)]) + within) /
                       static_cast<double>(n);
    }
  }

  if (n == 1) {
    design.maximin_score = std::numeric_limits<double>::infinity();
    return design;
  }

  // Squared distance table kept incrementally; a swap touches two rows only.
  Eigen::MatrixXd dist2(n, n);
  for (int i = 0; i < n; ++i) {
    dist2(i, i) = std::numeric_limits<double>::infinity();
    for (int j = i + 1; j < n; ++j) {
      const double d = (design.x.row(i) - design.x.row(j)).squaredNorm();
      dist2(i, j) = d;
      dist2(j, i) = d;
    }
  }
  double current_min = dist2.minCoeff();

  for (int proposal = 0; proposal < options.budget; ++proposal) {
    const int c = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(p)));
    const int a = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    const int b0 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
    const int b = b0 >= a ? b0 + 1 : b0;

    std::swap(design.x(a, c), design.x(b, c));
    Eigen::VectorXd row_a(n), row_b(n);
    for (int j = 0; j < n; ++j) {
      row_a(j) = j == a ? std::numeric_limits<double>::infinity()
                        : (design.x.row(a) - design.x.row(j)).squaredNorm();
      row_b(j) = j == b ? std::numeric_limits<double>::infinity()
                        : (design.x.row(b) - design.x.row(j)).squaredNorm();
    }
    Eigen::MatrixXd trial = dist2;
    for (int j = 0; j < n; ++j) {
      trial(a, j) = row_a(j);
      trial(j, a) = row_a(j);
      trial(b, j) = row_b(j);
      trial(j, b) = row_b(j);
    }
    trial(a, b) = row_a(b);
    trial(b, a) = row_a(b);
    const double trial_min = trial.minCoeff();
    if (trial_min >= current_min) {
      dist2 = std::move(trial);
      assert(trial_min >= current_min);
      current_min = trial_min;
    } else {
      std::swap(design.x(a, c), design.x(b, c));  // reject
    }
  }

  design.maximin_score = std::sqrt(current_min);
  return design;
}

Eigen::MatrixXi assign_levels(int n, const InputSchema& schema, std::uint64_t seed) {
  if (n < 1) throw ValidationError("assign_levels: n must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXi levels(n, schema.num_qual());
  for (int j = 0; j < schema.num_qual(); ++j) {
    const auto m = static_cast<std::uint64_t>(schema.num_levels(j));
    for (int i = 0; i < n; ++i) {
      levels(i, j) = static_cast<int>(rng.uniform_index(m)) + 1;
    }
  }
  return levels;
}

Design uniform_test_set(int n, const InputSchema& schema, std::uint64_t seed) {
  if (n < 1) throw ValidationError("uniform_test_set: n must be >= 1");
  Design design;
  design.seed = seed;
  Rng rng(derive_seed(seed, {0}));
  design.x.resize(n, schema.num_quant());
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < schema.num_quant(); ++c) design.x(i, c) = rng.uniform01();
  }
  design.levels = assign_levels(n, schema, derive_seed(seed, {1}));
  design.maximin_score = n == 1 ? std::numeric_limits<double>::infinity()
                                : std::sqrt(min_pairwise_sq(design.x));
  return design;
}

std::vector<MixedPoint> design_points(const Design& design, const InputSchema& schema) {
  if (design.x.cols() != schema.num_quant() || design.levels.cols() != schema.num_qual()) {
    throw ValidationError("design does not match schema shape");
  }
  std::vector<MixedPoint> points;
  points.reserve(static_cast<size_t>(design.size()));
  for (int i = 0; i < design.size(); ++i) {
    MixedPoint w;
    for (int c = 0; c < schema.num_quant(); ++c) w.x.push_back(design.x(i, c));
    for (int j = 0; j < schema.num_qual(); ++j) w.t.push_back(design.levels(i, j));
    points.push_back(denormalize(w, schema));
  }
  return points;
}

Dataset evaluate_design(const Design& design, const InputSchema& schema,
                        const std::function<double(const MixedPoint&)>& truth) {
  std::vector<MixedPoint> points = design_points(design, schema);
  std::vector<double> y;
  y.reserve(points.size());
  for (const auto& w : points) y.push_back(truth(w));
  return Dataset(schema, std::move(points), std::move(y));
}

void write_design_csv(const Design& design, const InputSchema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write design file '" + path + "'");
  out << "# seed=" << design.seed << " maximin=" << format_double(design.maximin_score) << "\n";
  for (int c = 0; c < schema.num_quant(); ++c) out << schema.quant(c).name << ",";
  for (int j = 0; j < schema.num_qual(); ++j) {
    out << schema.qual(j).name << (j + 1 < schema.num_qual() ? "," : "");
  }
  out << "\n";
  for (int i = 0; i < design.size(); ++i) {
    for (int c = 0; c < schema.num_quant(); ++c) out << format_double(design.x(i, c)) << ",";
    for (int j = 0; j < schema.num_qual(); ++j) {
      out << design.levels(i, j) << (j + 1 < schema.num_qual() ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace lvgp

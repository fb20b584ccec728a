#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lvgp/schema.hpp"

namespace lvgp {

// A training or test design: quantitative coordinates in the unit cube plus
// 1-based level assignments.
struct Design {
  Eigen::MatrixXd x;       // n x p, unit cube
  Eigen::MatrixXi levels;  // n x q, 1-based
  std::uint64_t seed = 0;
  // Minimum pairwise Euclidean distance over the quantitative part
  // (infinity for a single point).
  double maximin_score = 0.0;

  int size() const { return static_cast<int>(x.rows()); }
};

struct MaximinOptions {
  int budget = 10000;              // random within-column swap proposals
  bool jitter_within_strata = false;  // midpoints by default
};

// Random Latin hypercube (one point per stratum in every column) improved by
// swap proposals accepted iff the minimum pairwise distance does not
// decrease.  Deterministic per (n, p, seed, options).
Design maximin_lhd(int n, int p, std::uint64_t seed, const MaximinOptions& options = {});

// Independent uniform level draws for every point and factor.
Eigen::MatrixXi assign_levels(int n, const InputSchema& schema, std::uint64_t seed);

// Uniform hold-out set: i.i.d. uniform quantitative coordinates and uniform
// levels.
Design uniform_test_set(int n, const InputSchema& schema, std::uint64_t seed);

// Native-unit dataset from a design and a truth function evaluated at each
// design point.
Dataset evaluate_design(const Design& design, const InputSchema& schema,
                        const std::function<double(const MixedPoint&)>& truth);
// Design points mapped to native units.
std::vector<MixedPoint> design_points(const Design& design, const InputSchema& schema);

// Design CSV: unit-cube quantitative columns, 1-based level columns, seed
// recorded in a header comment.
void write_design_csv(const Design& design, const InputSchema& schema, const std::string& path);

}  // namespace lvgp

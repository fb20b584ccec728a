#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

namespace lvgp {

struct BoxBfgsOptions {
  int max_iterations = 500;
  double grad_tol = 1e-6;  // projected gradient infinity norm
  double armijo_c1 = 1e-4;
  int max_backtracks = 50;
};

enum class OptStatus {
  Converged,         // projected gradient below tolerance
  MaxIterations,
  LineSearchStalled, // no acceptable decrease along the projected direction
  StartInfeasible,   // objective penalized at the start point
};

struct OptResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  double projected_grad_norm = 0.0;
  OptStatus status = OptStatus::Converged;
  bool penalized = false;  // final value is a penalty value, not a likelihood
};

// Objective callback.  When `grad` is non-null it must be filled with the
// gradient at x.  `penalized` (never null) reports that the value is a
// penalty fallback with no usable gradient.
using BoxObjective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad, bool* penalized)>;

// Dense BFGS with projected (clipped) steps at the box bounds and an Armijo
// backtracking line search.  Descent is monotone: the returned value never
// exceeds the value at the start point.
OptResult minimize_box_bfgs(const BoxObjective& objective, const Eigen::VectorXd& lower,
                            const Eigen::VectorXd& upper, const Eigen::VectorXd& x0,
                            const BoxBfgsOptions& options = {});

// Latin hypercube sample of n_starts points over the bound box: each
// coordinate's values occupy the n_starts equal-width strata in a random
// order, placed uniformly within their stratum.  Deterministic per seed.
std::vector<Eigen::VectorXd> generate_starts(int n_starts, const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper, std::uint64_t seed);

}  // namespace lvgp

#include "lvgp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lvgp/rng.hpp"

namespace lvgp {

namespace {

Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

// Gradient with components zeroed where the bound blocks further movement.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                                   const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  Eigen::VectorXd pg = g;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((x(i) <= lower(i) && g(i) > 0.0) || (x(i) >= upper(i) && g(i) < 0.0)) pg(i) = 0.0;
  }
  return pg;
}

}  // namespace

OptResult minimize_box_bfgs(const BoxObjective& objective, const Eigen::VectorXd& lower,
                            const Eigen::VectorXd& upper, const Eigen::VectorXd& x0,
                            const BoxBfgsOptions& options) {
  const auto k = x0.size();
  if (lower.size() != k || upper.size() != k) {
    throw std::invalid_argument("minimize_box_bfgs: bound/variable size mismatch");
  }

  OptResult result;
  result.x = clamp_to_box(x0, lower, upper);

  Eigen::VectorXd grad(k);
  bool penalized = false;
  double f = objective(result.x, &grad, &penalized);
  if (penalized) {
    result.f = f;
    result.status = OptStatus::StartInfeasible;
    result.penalized = true;
    return result;
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(k, k);
  result.status = OptStatus::MaxIterations;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd pg = projected_gradient(result.x, grad, lower, upper);
    result.projected_grad_norm = pg.lpNorm<Eigen::Infinity>();
    result.iterations = iter;
    if (result.projected_grad_norm < options.grad_tol) {
      result.status = OptStatus::Converged;
      break;
    }

    Eigen::VectorXd direction = -(hinv * pg);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (pg(i) == 0.0) direction(i) = 0.0;
    }
    if (direction.dot(grad) >= 0.0) {
      hinv.setIdentity();
      direction = -pg;
    }

    // Backtracking Armijo search along the projected path x(a) = clip(x + a d);
    // the test uses the realized step so clipping is accounted for.
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = f;
    for (int bt = 0; bt < options.max_backtracks; ++bt, alpha *= 0.5) {
      x_new = clamp_to_box(result.x + alpha * direction, lower, upper);
      const Eigen::VectorXd step = x_new - result.x;
      if (step.isZero(0.0)) continue;
      bool trial_penalized = false;
      const double f_trial = objective(x_new, nullptr, &trial_penalized);
      if (!trial_penalized && f_trial <= f + options.armijo_c1 * grad.dot(step)) {
        f_new = f_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.status = OptStatus::LineSearchStalled;
      break;
    }

    Eigen::VectorXd grad_new(k);
    bool grad_penalized = false;
    const double f_check = objective(x_new, &grad_new, &grad_penalized);
    (void)f_check;
    if (grad_penalized) {
      // The accepted point lost its factorization on re-evaluation; stop at
      // the last good iterate.
      result.status = OptStatus::LineSearchStalled;
      break;
    }

    const Eigen::VectorXd s = x_new - result.x;
    const Eigen::VectorXd yv = grad_new - grad;
    const double sy = s.dot(yv);
    if (sy > 1e-10 * s.norm() * yv.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd outer = Eigen::MatrixXd::Identity(k, k) - rho * s * yv.transpose();
      hinv = outer * hinv * outer.transpose();
      hinv.noalias() += rho * s * s.transpose();
    }

    result.x = x_new;
    f = f_new;
    grad = grad_new;
  }

  result.f = f;
  if (result.status == OptStatus::MaxIterations) result.iterations = options.max_iterations;
  return result;
}

std::vector<Eigen::VectorXd> generate_starts(int n_starts, const Eigen::VectorXd& lower,
                                             const Eigen::VectorXd& upper, std::uint64_t seed) {
  if (n_starts < 1) throw std::invalid_argument("generate_starts: n_starts must be >= 1");
  const auto k = lower.size();
  if (upper.size() != k) throw std::invalid_argument("generate_starts: bound size mismatch");

  Rng rng(seed);
  std::vector<Eigen::VectorXd> starts(static_cast<size_t>(n_starts), Eigen::VectorXd(k));
  std::vector<int> perm(static_cast<size_t>(n_starts));
  for (Eigen::Index c = 0; c < k; ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    for (int i = 0; i < n_starts; ++i) {
      const double u01 = (static_cast<double>(perm[static_cast<size_t>(i)]) + rng.uniform01()) /
                         static_cast<double>(n_starts);
      starts[static_cast<size_t>(i)](c) = lower(c) + (upper(c) - lower(c)) * u01;
    }
  }
  return starts;
}

}  // namespace lvgp

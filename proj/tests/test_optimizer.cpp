#include <doctest.h>

#include <cmath>

#include "lvgp/optimizer.hpp"
#include "lvgp/rng.hpp"

using namespace lvgp;

TEST_SUITE_BEGIN("optimizer");

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

BoxObjective quadratic(const Eigen::VectorXd& center) {
  return [center](const Eigen::VectorXd& x, Eigen::VectorXd* grad, bool* penalized) {
    *penalized = false;
    if (grad != nullptr) *grad = 2.0 * (x - center);
    return (x - center).squaredNorm();
  };
}

}  // namespace

TEST_CASE("quadratic with an interior optimum converges") {
  const Eigen::VectorXd lo = vec({-2.0, -2.0, -2.0});
  const Eigen::VectorXd hi = vec({2.0, 2.0, 2.0});
  const Eigen::VectorXd center = vec({0.3, -1.1, 0.9});
  const OptResult res = minimize_box_bfgs(quadratic(center), lo, hi, vec({1.5, 1.5, -1.5}));
  CHECK(res.status == OptStatus::Converged);
  CHECK((res.x - center).lpNorm<Eigen::Infinity>() < 1e-6);
  CHECK(res.projected_grad_norm < 1e-6);
}

TEST_CASE("optimum outside the box lands on the boundary") {
  const Eigen::VectorXd lo = vec({-1.0, -1.0});
  const Eigen::VectorXd hi = vec({1.0, 1.0});
  const OptResult res = minimize_box_bfgs(quadratic(vec({3.0, 0.2})), lo, hi, vec({0.0, 0.0}));
  CHECK(res.status == OptStatus::Converged);
  CHECK(res.x(0) == 1.0);
  CHECK(res.x(1) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("rosenbrock in a box") {
  const BoxObjective rosenbrock = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                                     bool* penalized) {
    *penalized = false;
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    if (grad != nullptr) {
      (*grad)(0) = -2.0 * a - 400.0 * x(0) * b;
      (*grad)(1) = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
  };
  const OptResult res = minimize_box_bfgs(rosenbrock, vec({-2.0, -2.0}), vec({2.0, 2.0}),
                                          vec({-1.2, 1.0}));
  CHECK((res.x - vec({1.0, 1.0})).lpNorm<Eigen::Infinity>() < 1e-5);
}

TEST_CASE("descent is monotone from any start") {
  Rng rng(19);
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::VectorXd lo = vec({-3.0, -3.0, -3.0, -3.0});
    const Eigen::VectorXd hi = vec({3.0, 3.0, 3.0, 3.0});
    Eigen::VectorXd center(4), x0(4);
    for (int i = 0; i < 4; ++i) {
      center(i) = rng.uniform(-4.0, 4.0);
      x0(i) = rng.uniform(-3.0, 3.0);
    }
    const auto objective = quadratic(center);
    bool pen = false;
    const double f0 = objective(x0, nullptr, &pen);
    const OptResult res = minimize_box_bfgs(objective, lo, hi, x0);
    CHECK(res.f <= f0 + 1e-15);
  }
}

TEST_CASE("penalized start is reported as infeasible") {
  const BoxObjective always_penalized = [](const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                                           bool* penalized) {
    *penalized = true;
    if (grad != nullptr) grad->setZero(x.size());
    return 1e10 + x.squaredNorm();
  };
  const OptResult res = minimize_box_bfgs(always_penalized, vec({-1.0}), vec({1.0}), vec({0.5}));
  CHECK(res.status == OptStatus::StartInfeasible);
  CHECK(res.penalized);
  CHECK(res.f >= 1e10);
}

TEST_CASE("start generation is a Latin hypercube per coordinate") {
  const Eigen::VectorXd lo = vec({-2.0, 0.0, 10.0});
  const Eigen::VectorXd hi = vec({2.0, 1.0, 30.0});
  const int n = 23;
  const auto starts = generate_starts(n, lo, hi, 77);
  REQUIRE(starts.size() == static_cast<size_t>(n));

  for (int c = 0; c < 3; ++c) {
    std::vector<double> coords;
    for (const auto& s : starts) {
      CHECK(s(c) >= lo(c));
      CHECK(s(c) <= hi(c));
      coords.push_back((s(c) - lo(c)) / (hi(c) - lo(c)));
    }
    std::sort(coords.begin(), coords.end());
    for (int i = 0; i < n; ++i) {  // exactly one point per stratum
      CHECK(coords[static_cast<size_t>(i)] >= static_cast<double>(i) / n);
      CHECK(coords[static_cast<size_t>(i)] < static_cast<double>(i + 1) / n);
    }
  }

  const auto again = generate_starts(n, lo, hi, 77);
  for (int i = 0; i < n; ++i) CHECK(starts[static_cast<size_t>(i)] == again[static_cast<size_t>(i)]);
  const auto other = generate_starts(n, lo, hi, 78);
  bool any_diff = false;
  for (int i = 0; i < n; ++i) {
    if (starts[static_cast<size_t>(i)] != other[static_cast<size_t>(i)]) any_diff = true;
  }
  CHECK(any_diff);

  const auto single = generate_starts(1, lo, hi, 5);
  REQUIRE(single.size() == 1);
  for (int c = 0; c < 3; ++c) {
    CHECK(single[0](c) >= lo(c));
    CHECK(single[0](c) <= hi(c));
  }
}

TEST_SUITE_END();

#pragma once

#include "lvgp/bench.hpp"
#include "lvgp/kernel_engine.hpp"
#include "lvgp/problems.hpp"
#include "lvgp/rng.hpp"

namespace lvgp::benchdata {

inline ReplicateData replicate(const char* problem, int n) {
  return make_replicate(BenchmarkProblem::by_name(problem), n, 256, 42, 1, 500);
}

inline Eigen::VectorXd mid_params(const KernelEngine& engine) {
  return 0.5 * (engine.lower() + engine.upper());
}

}  // namespace lvgp::benchdata

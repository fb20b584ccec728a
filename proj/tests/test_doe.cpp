#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "lvgp/doe.hpp"
#include "lvgp/problems.hpp"
#include "test_util.hpp"

using namespace lvgp;

TEST_SUITE_BEGIN("doe");

namespace {

// every column holds exactly one coordinate per stratum [(k-1)/n, k/n)
void check_lhd(const Eigen::MatrixXd& x) {
  const auto n = x.rows();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    std::vector<double> col(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) col[static_cast<size_t>(i)] = x(i, c);
    std::sort(col.begin(), col.end());
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(col[static_cast<size_t>(i)] >= static_cast<double>(i) / static_cast<double>(n));
      CHECK(col[static_cast<size_t>(i)] < static_cast<double>(i + 1) / static_cast<double>(n));
    }
  }
}

}  // namespace

TEST_CASE("maximin improvement preserves the Latin hypercube property") {
  MaximinOptions options;
  options.budget = 3000;
  const Design design = maximin_lhd(16, 3, 99, options);
  check_lhd(design.x);

  options.jitter_within_strata = true;
  const Design jittered = maximin_lhd(16, 3, 99, options);
  check_lhd(jittered.x);
}

TEST_CASE("maximin score never falls below the initial design's score") {
  MaximinOptions no_swaps;
  no_swaps.budget = 0;
  MaximinOptions swaps;
  swaps.budget = 5000;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    const Design before = maximin_lhd(20, 2, seed, no_swaps);
    const Design after = maximin_lhd(20, 2, seed, swaps);
    CHECK(after.maximin_score >= before.maximin_score);
    // the reported score is the realized minimum distance
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      for (int j = i + 1; j < 20; ++j) {
        best = std::min(best, (after.x.row(i) - after.x.row(j)).norm());
      }
    }
    CHECK(after.maximin_score == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("designs are deterministic per seed") {
  const Design a = maximin_lhd(12, 4, 7);
  const Design b = maximin_lhd(12, 4, 7);
  CHECK(a.x == b.x);
  const Design c = maximin_lhd(12, 4, 8);
  CHECK(a.x != c.x);
}

TEST_CASE("single point design") {
  const Design d = maximin_lhd(1, 3, 0);
  CHECK(d.size() == 1);
  CHECK(std::isinf(d.maximin_score));
  CHECK(d.x.minCoeff() >= 0.0);
  CHECK(d.x.maxCoeff() < 1.0);
}

TEST_CASE("level assignment is uniform, in-range, and deterministic") {
  const auto schema = BenchmarkProblem::by_name("mathfn1").instantiate(0).schema;
  const Eigen::MatrixXi levels = assign_levels(100000, schema, 4242);
  CHECK(levels.minCoeff() >= 1);
  CHECK(levels.maxCoeff() <= 5);

  std::array<int, 5> counts{};
  for (Eigen::Index i = 0; i < levels.rows(); ++i) ++counts[static_cast<size_t>(levels(i, 0) - 1)];
  const double expected = 100000.0 / 5.0;
  double chi2 = 0.0;
  for (int count : counts) {
    chi2 += (count - expected) * (count - expected) / expected;
  }
  CHECK(chi2 < 40.0);  // df = 4; far beyond any plausible tail at this n

  CHECK(assign_levels(50, schema, 1) == assign_levels(50, schema, 1));
  CHECK(assign_levels(50, schema, 1) != assign_levels(50, schema, 2));
}

TEST_CASE("uniform test sets are valid and train/test stay disjoint") {
  const auto schema = BenchmarkProblem::by_name("borehole").instantiate(0).schema;
  const Design test = uniform_test_set(500, schema, 11);
  CHECK(test.x.rows() == 500);
  CHECK(test.x.minCoeff() >= 0.0);
  CHECK(test.x.maxCoeff() < 1.0);
  CHECK(test.levels.col(0).maxCoeff() <= 3);
  CHECK(test.levels.col(1).maxCoeff() <= 4);

  const Design again = uniform_test_set(500, schema, 11);
  CHECK(test.x == again.x);
  CHECK(test.levels == again.levels);

  const Design train = maximin_lhd(80, schema.num_quant(), 12);
  int shared = 0;
  for (int i = 0; i < train.size(); ++i) {
    for (int j = 0; j < test.size(); ++j) {
      if ((train.x.row(i) - test.x.row(j)).norm() == 0.0) ++shared;
    }
  }
  CHECK(shared == 0);

  // all generated points validate against the schema
  for (const auto& w : design_points(test, schema)) {
    CHECK(is_valid(w, schema));
  }
}

TEST_CASE("design csv carries the seed and the design") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lvgp_doe_test";
  fs::create_directories(dir);
  const auto schema = BenchmarkProblem::by_name("mathfn1").instantiate(0).schema;

  Design design = maximin_lhd(10, schema.num_quant(), 77);
  design.levels = assign_levels(10, schema, 78);
  const std::string path = (dir / "design.csv").string();
  write_design_csv(design, schema, path);

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.find("# seed=77") != std::string::npos);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x1,x2,t");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 10);
  fs::remove_all(dir);
}

TEST_SUITE_END();

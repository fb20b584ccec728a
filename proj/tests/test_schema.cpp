#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "lvgp/schema.hpp"
#include "lvgp/schema_io.hpp"
#include "test_util.hpp"

using namespace lvgp;

TEST_SUITE_BEGIN("schema");

namespace {

InputSchema two_by_one() {
  return InputSchema({{"x1", 0.0, 1.0}, {"x2", 10.0, 20.0}}, {{"t", {"a", "b", "c", "d", "e"}}});
}

}  // namespace

TEST_CASE("schema construction rejects bad declarations") {
  CHECK_THROWS_AS(InputSchema({{"x", 1.0, 1.0}}, {}), ValidationError);
  CHECK_THROWS_AS(InputSchema({{"x", 2.0, 1.0}}, {}), ValidationError);
  CHECK_THROWS_AS(InputSchema({}, {{"t", {"only"}}}), ValidationError);
  CHECK_THROWS_AS(InputSchema({}, {{"t", {"a", "a"}}}), ValidationError);
}

TEST_CASE("validate reports every violation") {
  const InputSchema schema = two_by_one();
  CHECK(validate({{0.5, 15.0}, {3}}, schema).empty());

  const auto level_violations = validate({{0.5, 15.0}, {7}}, schema);
  REQUIRE(level_violations.size() == 1);
  CHECK(level_violations[0].message.find("factor 1 level out of range") != std::string::npos);

  const auto low_violations = validate({{-0.25, 15.0}, {2}}, schema);
  REQUIRE(low_violations.size() == 1);
  CHECK(low_violations[0].message.find("input 1") != std::string::npos);

  CHECK(validate({{-0.25, 45.0}, {9}}, schema).size() == 3);
  CHECK_FALSE(is_valid({{0.5}, {1}}, schema));
}

TEST_CASE("normalize endpoints, midpoint, and round trip") {
  const InputSchema schema = two_by_one();
  const MixedPoint lo{{0.0, 10.0}, {1}};
  const MixedPoint hi{{1.0, 20.0}, {5}};
  CHECK(normalize(lo, schema).x[1] == 0.0);
  CHECK(normalize(hi, schema).x[1] == 1.0);
  CHECK(normalize({{0.25, 15.0}, {2}}, schema).x[1] == doctest::Approx(0.5).epsilon(1e-15));

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const MixedPoint w = test::random_point(schema, rng);
    const MixedPoint back = denormalize(normalize(w, schema), schema);
    for (size_t c = 0; c < w.x.size(); ++c) {
      const double scale = std::max(1.0, std::abs(w.x[c]));
      CHECK(std::abs(back.x[c] - w.x[c]) < 1e-12 * scale);
    }
    CHECK(back.t == w.t);
    // normalized points validate under the unit-cube schema
    CHECK(is_valid(normalize(w, schema), schema.unit_cube()));
  }

  CHECK_THROWS_AS(normalize({{2.0, 15.0}, {1}}, schema), ValidationError);
}

TEST_CASE("dataset invariants") {
  const InputSchema schema = two_by_one();
  std::vector<MixedPoint> pts = {{{0.5, 12.0}, {1}}, {{0.25, 18.0}, {4}}};
  CHECK_NOTHROW(Dataset(schema, pts, {1.0, 2.0}));
  CHECK_THROWS_AS(Dataset(schema, pts, {1.0}), ValidationError);
  CHECK_THROWS_AS(Dataset(schema, {}, {}), ValidationError);
  std::vector<MixedPoint> bad = {{{0.5, 12.0}, {9}}};
  CHECK_THROWS_AS(Dataset(schema, bad, {1.0}), ValidationError);
}

TEST_CASE("packed dataset round trip") {
  const InputSchema schema = two_by_one();
  Rng rng(11);
  std::vector<MixedPoint> pts;
  std::vector<double> y;
  for (int i = 0; i < 9; ++i) {
    pts.push_back(test::random_point(schema, rng));
    y.push_back(rng.uniform(-5.0, 5.0));
  }
  const Dataset data(schema, pts, y);
  const PackedDataset packed = pack_dataset(data);
  CHECK(packed.x.rows() == 9);
  CHECK(packed.x.minCoeff() >= 0.0);
  CHECK(packed.x.maxCoeff() <= 1.0);
  CHECK(packed.levels.minCoeff() >= 0);

  const Dataset back = unpack_dataset(schema, packed);
  for (int i = 0; i < data.size(); ++i) {
    CHECK(back.y(i) == data.y(i));
    CHECK(back.point(i).t == data.point(i).t);
    for (size_t c = 0; c < data.point(i).x.size(); ++c) {
      CHECK(back.point(i).x[c] ==
            doctest::Approx(data.point(i).x[c]).epsilon(1e-12));
    }
  }
}

TEST_CASE("schema json and dataset csv round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lvgp_schema_io_test";
  fs::create_directories(dir);

  const InputSchema schema = two_by_one();
  const std::string schema_path = (dir / "schema.json").string();
  write_schema_json(schema, schema_path);
  const InputSchema loaded = read_schema_json(schema_path);
  CHECK(loaded == schema);

  CHECK(schema_from_json_string(schema_to_json_string(schema)) == schema);

  Rng rng(3);
  std::vector<MixedPoint> pts;
  std::vector<double> y;
  for (int i = 0; i < 6; ++i) {
    pts.push_back(test::random_point(schema, rng));
    y.push_back(rng.uniform(-2.0, 2.0));
  }
  const Dataset data(schema, pts, y);
  const std::string csv_path = (dir / "data.csv").string();
  write_dataset_csv(data, csv_path);
  const Dataset reread = read_dataset_csv(schema, csv_path);
  REQUIRE(reread.size() == data.size());
  for (int i = 0; i < data.size(); ++i) {
    CHECK(reread.point(i).t == data.point(i).t);
    CHECK(reread.y(i) == data.y(i));  // round-trip formatting is exact
  }

  // 1-based indices are accepted in place of labels
  std::FILE* f = std::fopen(csv_path.c_str(), "w");
  std::fputs("x1,x2,t,y\n0.5,12,3,1.5\n0.25,19,5,-2\n", f);
  std::fclose(f);
  const Dataset by_index = read_dataset_csv(schema, csv_path);
  CHECK(by_index.point(0).t[0] == 3);
  CHECK(by_index.point(1).t[0] == 5);

  fs::remove_all(dir);
}

TEST_SUITE_END();

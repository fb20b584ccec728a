#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "lvgp/problems.hpp"
#include "test_util.hpp"

using namespace lvgp;

TEST_SUITE_BEGIN("problems");

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("math function 1") {
  for (int t = 1; t <= 5; ++t) CHECK(std::abs(math_fn1(0.5, 0.5, t)) < 1e-12);
  CHECK(math_fn1(0.25, 0.75, 2) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(kMathFn1Coeff == std::array<double, 5>{1.0, 13.0, 1.5, 9.0, 4.5});
  CHECK_THROWS_AS((void)math_fn1(0.5, 0.5, 0), ValidationError);
  CHECK_THROWS_AS((void)math_fn1(0.5, 0.5, 6), ValidationError);
}

TEST_CASE("math function 2") {
  const std::array<double, 5> zero = {0, 0, 0, 0, 0};
  CHECK(math_fn2(zero, {2, 2, 2, 2, 2}) == 0.0);
  CHECK(math_fn2(zero, {3, 3, 3, 3, 3}) ==
        doctest::Approx(-0.005018787235070712).epsilon(1e-12));

  // sign flip between all-ones and all-threes levels, any x
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    std::array<double, 5> x{};
    for (auto& xi : x) xi = rng.uniform(-100.0, 100.0);
    CHECK(math_fn2(x, {1, 1, 1, 1, 1}) ==
          doctest::Approx(-math_fn2(x, {3, 3, 3, 3, 3})).epsilon(1e-12));
  }

  // the factor paired with x_i is t_{6-i}
  std::array<double, 5> x{};
  x[0] = 80.0;  // only x_1 nonzero; linear term reads t_5
  const double with_t5 = math_fn2(x, {2, 2, 2, 2, 3});
  const double base = math_fn2(x, {2, 2, 2, 2, 2});
  CHECK(base == 0.0);
  CHECK(with_t5 ==
        doctest::Approx(80.0 / 80.0 + std::cos(80.0) * std::sin(50.0)).epsilon(1e-12));
}

TEST_CASE("beam bending") {
  CHECK(kBeamInertia[0] == doctest::Approx(kPi / 64.0).epsilon(1e-15));
  CHECK(kBeamInertia[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(kBeamInertia[2] == 0.0449);
  CHECK(kBeamInertia[3] == 0.0633);
  CHECK(kBeamInertia[4] == 0.0373);
  CHECK(kBeamInertia[5] == 0.0167);

  CHECK(beam_deflection(10.0, 1.0, 1) ==
        doctest::Approx(6.790610905254202e-06).epsilon(1e-14));

  // quartic height scaling
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const double length = rng.uniform(10.0, 20.0);
    const int shape = static_cast<int>(rng.uniform_index(6)) + 1;
    const double y1 = beam_deflection(length, 1.0, shape);
    const double y2 = beam_deflection(length, 2.0, shape);
    CHECK(y1 == doctest::Approx(16.0 * y2).epsilon(1e-12));
  }
}

TEST_CASE("borehole") {
  // zero head difference (hypothetical inputs)
  CHECK(borehole(89335.0, 25050.0, 740.0, 89.55, 1400.0, 10950.0, 0.10, 740.0) == 0.0);

  CHECK(borehole(89335.0, 25050.0, 1050.0, 89.55, 1400.0, 10950.0, 0.10, 740.0) ==
        doctest::Approx(75.76069971522026).epsilon(1e-12));

  // strictly decreasing in hl everywhere on a random grid
  Rng rng(7);
  const std::array<double, 4> hl = {700.0, 740.0, 780.0, 820.0};
  for (int rep = 0; rep < 100; ++rep) {
    const double tu = rng.uniform(63070.0, 115600.0);
    const double r = rng.uniform(100.0, 50000.0);
    const double hu = rng.uniform(990.0, 1110.0);
    const double tl = rng.uniform(63.1, 116.0);
    const double l = rng.uniform(1120.0, 1680.0);
    const double kw = rng.uniform(9855.0, 12045.0);
    const double rw = 0.05 + 0.05 * static_cast<double>(rng.uniform_index(3));
    for (size_t i = 0; i + 1 < hl.size(); ++i) {
      CHECK(borehole(tu, r, hu, tl, l, kw, rw, hl[i]) >
            borehole(tu, r, hu, tl, l, kw, rw, hl[i + 1]));
    }
    // independent re-evaluation with different algebraic grouping
    const double lr = std::log(r / rw);
    const double direct = 2.0 * kPi * tu * (hu - hl[0]);
    const double denom = lr + 2.0 * l * tu / (rw * rw * kw) + lr * tu / tl;
    CHECK(borehole(tu, r, hu, tl, l, kw, rw, hl[0]) ==
          doctest::Approx(direct / denom).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)borehole(89335.0, -1.0, 1050.0, 89.55, 1400.0, 10950.0, 0.10, 740.0),
                  ValidationError);
}

TEST_CASE("otl circuit") {
  // Vb1 = 6 whenever Rb1 = Rb2, independent of the common value
  const double a = otl_circuit(50.0, 50.0, 1.85, 0.725, 1.2, 150.0);
  const double b = otl_circuit(150.0, 150.0, 1.85, 0.725, 1.2, 150.0);
  CHECK(a == b);

  CHECK(otl_circuit(100.0, 47.5, 1.85, 0.725, 1.2, 150.0) ==
        doctest::Approx(5.0895567586770145).epsilon(1e-12));

  Rng rng(9);
  const std::array<double, 4> rf = {0.5, 1.2, 2.1, 2.9};
  const std::array<double, 6> bb = {50.0, 100.0, 150.0, 200.0, 250.0, 300.0};
  for (int rep = 0; rep < 200; ++rep) {
    const double rb1 = rng.uniform(50.0, 150.0);
    const double rb2 = rng.uniform(25.0, 70.0);
    const double rc1 = rng.uniform(1.2, 2.5);
    const double rc2 = rng.uniform(0.25, 1.20);
    const double rfv = rf[rng.uniform_index(4)];
    const double bv = bb[rng.uniform_index(6)];
    const double y = otl_circuit(rb1, rb2, rc1, rc2, rfv, bv);
    CHECK(y > 0.0);
    // independent re-evaluation
    const double vb1 = 12.0 * rb2 / (rb1 + rb2);
    const double den = bv * (rc2 + 9.0) + rfv;
    const double expected =
        ((vb1 + 0.74) * bv * (rc2 + 9.0) + 11.35 * rfv + 0.74 * rfv * bv * (rc2 + 9.0) / rc1) /
        den;
    CHECK(y == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("piston") {
  CHECK(piston_cycle_time(45.0, 0.0125, 0.006, 293.0, 350.0, 10000.0, 3000.0) ==
        doctest::Approx(0.6633862790471955).epsilon(1e-12));

  Rng rng(11);
  const std::array<double, 3> p0 = {9000.0, 10000.0, 11000.0};
  const std::array<double, 5> kk = {1000.0, 2000.0, 3000.0, 4000.0, 5000.0};
  for (int rep = 0; rep < 500; ++rep) {
    const double m = rng.uniform(30.0, 60.0);
    const double s = rng.uniform(0.005, 0.020);
    const double v0 = rng.uniform(0.002, 0.010);
    const double ta = rng.uniform(290.0, 296.0);
    const double t0 = rng.uniform(340.0, 360.0);
    const double p0v = p0[rng.uniform_index(3)];
    const double kv = kk[rng.uniform_index(5)];
    const double y = piston_cycle_time(m, s, v0, ta, t0, p0v, kv);
    CHECK(y > 0.0);
    // V > 0 on the whole domain: the discriminant exceeds A^2
    const double av = p0v * s + 19.62 * m - kv * v0 / s;
    CHECK(av * av + 4.0 * kv * p0v * v0 * ta / t0 > av * av);
    // independent re-evaluation
    const double vv = s / (2.0 * kv) * (std::sqrt(av * av + 4.0 * kv * p0v * v0 * ta / t0) - av);
    const double expected = 2.0 * kPi * std::sqrt(m / (kv + s * s * p0v * v0 * ta / (t0 * vv * vv)));
    CHECK(y == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("revised borehole level table") {
  CHECK(borehole12_underlying(1) == std::pair{0.05, 700.0});
  CHECK(borehole12_underlying(4) == std::pair{0.05, 820.0});
  CHECK(borehole12_underlying(6) == std::pair{0.10, 740.0});
  CHECK(borehole12_underlying(12) == std::pair{0.15, 820.0});

  std::set<std::pair<double, double>> pairs;
  for (int t = 1; t <= 12; ++t) pairs.insert(borehole12_underlying(t));
  CHECK(pairs.size() == 12);  // bijection onto the table

  CHECK(borehole12(89335.0, 25050.0, 1050.0, 89.55, 1400.0, 10950.0, 6) ==
        borehole(89335.0, 25050.0, 1050.0, 89.55, 1400.0, 10950.0, 0.10, 740.0));
  CHECK_THROWS_AS((void)borehole12_underlying(13), ValidationError);
}

TEST_CASE("fn17 construction") {
  for (int j : {1, 3, 10}) {
    const UnderlyingVars vars = make_fn17_vars(j, 42);
    REQUIRE(vars.values.rows() == j);
    REQUIRE(vars.values.cols() == 5);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(j));
    for (int t = 0; t < 5; ++t) {
      CHECK(inv_sqrt * vars.values.col(t).sum() ==
            doctest::Approx(kMathFn1Coeff[static_cast<size_t>(t)]).epsilon(1e-10));
    }
  }

  // J = 1 reduces to math function 1
  const ProblemInstance fn17_1 = make_fn17(1, 7);
  Rng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const MixedPoint w = test::random_point(fn17_1.schema, rng);
    CHECK(fn17_1.evaluate(w) ==
          doctest::Approx(math_fn1(w.x[0], w.x[1], w.t[0])).epsilon(1e-12));
  }

  // the response sees the u-draws only through the pinned column sums
  const ProblemInstance a = make_fn17(5, 1001);
  const ProblemInstance b = make_fn17(5, 2002);
  CHECK(a.underlying->values != b.underlying->values);
  for (int rep = 0; rep < 100; ++rep) {
    const MixedPoint w = test::random_point(a.schema, rng);
    CHECK(a.evaluate(w) == doctest::Approx(b.evaluate(w)).epsilon(1e-9));
  }

  // determinism per seed
  CHECK(make_fn17_vars(5, 99).values == make_fn17_vars(5, 99).values);
  CHECK_THROWS_AS((void)make_fn17(0, 1), ValidationError);
}

TEST_CASE("fn18 construction") {
  const UnderlyingVars vars = make_fn18_vars(31);
  REQUIRE(vars.values.rows() == 10);
  REQUIRE(vars.values.cols() == 5);
  CHECK(vars.values.minCoeff() >= -50.0);
  CHECK(vars.values.maxCoeff() <= 50.0);
  CHECK(make_fn18_vars(31).values == vars.values);
  CHECK(make_fn18_vars(32).values != vars.values);

  // forced zero draw kills both terms
  UnderlyingVars zero;
  zero.values = Eigen::MatrixXd::Zero(10, 5);
  const ProblemInstance silent = make_fn18_from_vars(zero);
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    CHECK(silent.evaluate(test::random_point(silent.schema, rng)) == 0.0);
  }

  // evaluator against a direct transcription
  const ProblemInstance inst = make_fn18(77);
  for (int rep = 0; rep < 100; ++rep) {
    const MixedPoint w = test::random_point(inst.schema, rng);
    double linear = 0.0, product = 1.0;
    for (int i = 1; i <= 10; ++i) {
      const double vi = inst.underlying->values(10 - i, w.t[0] - 1);
      linear += w.x[static_cast<size_t>(i - 1)] * vi / 4000.0;
      product *= std::cos(w.x[static_cast<size_t>(i - 1)] / std::sqrt(i)) *
                 std::sin(vi / std::sqrt(i));
    }
    CHECK(inst.evaluate(w) == doctest::Approx(linear + product).epsilon(1e-12));
  }
}

TEST_CASE("schemas match the published tables") {
  const auto mathfn1 = BenchmarkProblem::by_name("mathfn1").instantiate(0);
  CHECK(mathfn1.schema.num_quant() == 2);
  CHECK(mathfn1.schema.num_levels(0) == 5);
  CHECK(mathfn1.recommended_train_n == 70);
  CHECK(mathfn1.recommended_test_n == 10000);

  const auto mathfn2 = BenchmarkProblem::by_name("mathfn2").instantiate(0);
  CHECK(mathfn2.schema.num_quant() == 5);
  CHECK(mathfn2.schema.num_qual() == 5);
  for (int j = 0; j < 5; ++j) CHECK(mathfn2.schema.num_levels(j) == 3);
  CHECK(mathfn2.schema.quant(0).lower == -100.0);
  CHECK(mathfn2.schema.quant(0).upper == 100.0);

  const auto bending = BenchmarkProblem::by_name("bending").instantiate(0);
  CHECK(bending.schema.quant(0).lower == 10.0);
  CHECK(bending.schema.quant(0).upper == 20.0);
  CHECK(bending.schema.quant(1).lower == 1.0);
  CHECK(bending.schema.quant(1).upper == 2.0);
  CHECK(bending.schema.num_levels(0) == 6);
  CHECK(bending.recommended_train_n == 60);

  const auto bore = BenchmarkProblem::by_name("borehole").instantiate(0);
  CHECK(bore.schema.num_quant() == 6);
  CHECK(bore.schema.num_levels(0) == 3);
  CHECK(bore.schema.num_levels(1) == 4);
  CHECK(bore.recommended_train_n == 80);
  CHECK(bore.schema.quant(0).lower == 63070.0);
  CHECK(bore.schema.quant(0).upper == 115600.0);
  CHECK(bore.schema.quant(5).lower == 9855.0);

  const auto otl_p = BenchmarkProblem::by_name("otl").instantiate(0);
  CHECK(otl_p.schema.num_levels(0) == 4);
  CHECK(otl_p.schema.num_levels(1) == 6);
  CHECK(otl_p.recommended_train_n == 60);
  CHECK(otl_p.schema.quant(3).lower == 0.25);
  CHECK(otl_p.schema.quant(3).upper == 1.20);

  const auto piston_p = BenchmarkProblem::by_name("piston").instantiate(0);
  CHECK(piston_p.schema.num_levels(0) == 3);
  CHECK(piston_p.schema.num_levels(1) == 5);
  CHECK(piston_p.recommended_train_n == 100);
  CHECK(piston_p.schema.quant(1).lower == 0.005);
  CHECK(piston_p.schema.quant(1).upper == 0.020);

  const auto b12 = BenchmarkProblem::by_name("borehole12").instantiate(0);
  CHECK(b12.schema.num_qual() == 1);
  CHECK(b12.schema.num_levels(0) == 12);
}

TEST_CASE("instances validate their domain and stay deterministic") {
  const auto inst = BenchmarkProblem::by_name("bending").instantiate(0);
  CHECK_THROWS_AS((void)inst.evaluate(MixedPoint{{5.0, 1.5}, {2}}), ValidationError);
  CHECK_THROWS_AS((void)inst.evaluate(MixedPoint{{15.0, 1.5}, {7}}), ValidationError);

  // fixed problems ignore the instantiation seed
  const auto other = BenchmarkProblem::by_name("bending").instantiate(12345);
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const MixedPoint w = test::random_point(inst.schema, rng);
    CHECK(inst.evaluate(w) == other.evaluate(w));
  }

  CHECK_FALSE(BenchmarkProblem::by_name("bending").randomized());
  CHECK(BenchmarkProblem::by_name("fn18").randomized());
  CHECK(BenchmarkProblem::by_name("fn17:3").randomized());
  CHECK_THROWS_AS((void)BenchmarkProblem::by_name("nope"), ValidationError);
}

TEST_SUITE_END();

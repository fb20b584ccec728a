#include "lvgp/problems.hpp"

#include <cmath>
#include <numbers>

#include "lvgp/errors.hpp"
#include "lvgp/rng.hpp"

namespace lvgp {

namespace {
constexpr double kPi = std::numbers::pi;

void check_level(int t, int m, const char* what) {
  if (t < 1 || t > m) {
    throw ValidationError(std::string(what) + ": level " + std::to_string(t) +
                          " outside 1.." + std::to_string(m));
  }
}
}  // namespace

const std::array<double, 5> kMathFn1Coeff = {1.0, 13.0, 1.5, 9.0, 4.5};

// Circle and square carry their exact analytic values; the rest are the
// printed constants.
const std::array<double, 6> kBeamInertia = {kPi / 64.0, 1.0 / 12.0, 0.0449,
                                            0.0633, 0.0373, 0.0167};

double math_fn1(double x1, double x2, int t) {
  check_level(t, 5, "math_fn1");
  return 7.0 * std::sin(2.0 * kPi * x1 - kPi) +
         kMathFn1Coeff[static_cast<size_t>(t - 1)] * std::sin(2.0 * kPi * x2 - kPi);
}

double math_fn2(const std::array<double, 5>& x, const std::array<int, 5>& t) {
  double linear = 0.0;
  double product = 1.0;
  for (int i = 1; i <= 5; ++i) {
    const int tj = t[static_cast<size_t>(5 - i)];  // t_{6-i}
    check_level(tj, 3, "math_fn2");
    const double xi = x[static_cast<size_t>(i - 1)];
    const double root = std::sqrt(static_cast<double>(i));
    linear += xi * static_cast<double>(tj - 2) / 80.0;
    product *= std::cos(xi / root) * std::sin(50.0 * static_cast<double>(tj - 2) / root);
  }
  return linear + product;
}

double beam_deflection(double length, double height, int shape) {
  check_level(shape, 6, "beam_deflection");
  const double h2 = height * height;
  return length * length * length /
         (3e9 * h2 * h2 * kBeamInertia[static_cast<size_t>(shape - 1)]);
}

double borehole(double tu, double r, double hu, double tl, double l, double kw,
                double rw, double hl) {
  if (!(r > 0.0) || !(rw > 0.0)) {
    throw ValidationError("borehole: r and rw must be positive");
  }
  const double log_ratio = std::log(r / rw);
  const double denom =
      log_ratio * (1.0 + 2.0 * l * tu / (log_ratio * rw * rw * kw) + tu / tl);
  return 2.0 * kPi * tu * (hu - hl) / denom;
}

double otl_circuit(double rb1, double rb2, double rc1, double rc2, double rf, double b) {
  const double vb1 = 12.0 * rb2 / (rb1 + rb2);
  const double denom = b * (rc2 + 9.0) + rf;
  return (vb1 + 0.74) * b * (rc2 + 9.0) / denom + 11.35 * rf / denom +
         0.74 * rf * b * (rc2 + 9.0) / (denom * rc1);
}

double piston_cycle_time(double m, double s, double v0, double ta, double t0,
                         double p0, double k) {
  const double a = p0 * s + 19.62 * m - k * v0 / s;
  const double disc = a * a + 4.0 * k * p0 * v0 * ta / t0;
  const double v = s / (2.0 * k) * (std::sqrt(disc) - a);
  if (!(v > 0.0)) throw ValidationError("piston: chamber volume must be positive");
  return 2.0 * kPi * std::sqrt(m / (k + s * s * p0 * v0 * ta / (t0 * v * v)));
}

std::pair<double, double> borehole12_underlying(int level) {
  check_level(level, 12, "borehole12");
  static const std::array<double, 3> rw_levels = {0.05, 0.10, 0.15};
  static const std::array<double, 4> hl_levels = {700.0, 740.0, 780.0, 820.0};
  const int group = (level - 1) / 4;
  const int within = (level - 1) % 4;
  return {rw_levels[static_cast<size_t>(group)], hl_levels[static_cast<size_t>(within)]};
}

double borehole12(double tu, double r, double hu, double tl, double l, double kw, int level) {
  const auto [rw, hl] = borehole12_underlying(level);
  return borehole(tu, r, hu, tl, l, kw, rw, hl);
}

namespace {

std::vector<std::string> index_labels(int m) {
  std::vector<std::string> labels;
  for (int l = 1; l <= m; ++l) labels.push_back(std::to_string(l));
  return labels;
}

InputSchema borehole_quant_schema(std::vector<QualFactor> qual) {
  // Table 1's borehole column repeats the OTL entries; these are the
  // standard ranges from the original formulation.
  std::vector<QuantInput> quant = {{"Tu", 63070.0, 115600.0}, {"r", 100.0, 50000.0},
                                   {"Hu", 990.0, 1110.0},     {"Tl", 63.1, 116.0},
                                   {"L", 1120.0, 1680.0},     {"Kw", 9855.0, 12045.0}};
  return InputSchema(std::move(quant), std::move(qual));
}

ProblemInstance fixed_instance(std::string name, InputSchema schema,
                               std::function<double(const MixedPoint&)> raw, int train_n) {
  ProblemInstance inst;
  inst.name = std::move(name);
  inst.schema = std::move(schema);
  const InputSchema& bound = inst.schema;
  inst.truth = [bound, raw = std::move(raw)](const MixedPoint& w) {
    require_valid(w, bound);
    return raw(w);
  };
  inst.recommended_train_n = train_n;
  return inst;
}

ProblemInstance make_mathfn1() {
  InputSchema schema({{"x1", 0.0, 1.0}, {"x2", 0.0, 1.0}}, {{"t", index_labels(5)}});
  return fixed_instance("mathfn1", std::move(schema),
                        [](const MixedPoint& w) { return math_fn1(w.x[0], w.x[1], w.t[0]); },
                        70);
}

ProblemInstance make_mathfn2() {
  std::vector<QuantInput> quant;
  std::vector<QualFactor> qual;
  for (int i = 1; i <= 5; ++i) {
    quant.push_back({"x" + std::to_string(i), -100.0, 100.0});
    qual.push_back({"t" + std::to_string(i), index_labels(3)});
  }
  InputSchema schema(std::move(quant), std::move(qual));
  return fixed_instance("mathfn2", std::move(schema),
                        [](const MixedPoint& w) {
                          std::array<double, 5> x{};
                          std::array<int, 5> t{};
                          for (int i = 0; i < 5; ++i) {
                            x[static_cast<size_t>(i)] = w.x[static_cast<size_t>(i)];
                            t[static_cast<size_t>(i)] = w.t[static_cast<size_t>(i)];
                          }
                          return math_fn2(x, t);
                        },
                        100);
}

ProblemInstance make_bending() {
  InputSchema schema({{"L", 10.0, 20.0}, {"h", 1.0, 2.0}},
                     {{"shape", {"circular", "square", "I-shape", "hollow-circular",
                                 "hollow-square", "H-shape"}}});
  return fixed_instance("bending", std::move(schema),
                        [](const MixedPoint& w) {
                          return beam_deflection(w.x[0], w.x[1], w.t[0]);
                        },
                        60);
}

ProblemInstance make_borehole() {
  InputSchema schema = borehole_quant_schema(
      {{"rw", {"0.05", "0.10", "0.15"}}, {"Hl", {"700", "740", "780", "820"}}});
  static const std::array<double, 3> rw_levels = {0.05, 0.10, 0.15};
  static const std::array<double, 4> hl_levels = {700.0, 740.0, 780.0, 820.0};
  return fixed_instance("borehole", std::move(schema),
                        [](const MixedPoint& w) {
                          return borehole(w.x[0], w.x[1], w.x[2], w.x[3], w.x[4], w.x[5],
                                          rw_levels[static_cast<size_t>(w.t[0] - 1)],
                                          hl_levels[static_cast<size_t>(w.t[1] - 1)]);
                        },
                        80);
}

ProblemInstance make_otl() {
  InputSchema schema({{"Rb1", 50.0, 150.0}, {"Rb2", 25.0, 70.0},
                      {"Rc1", 1.2, 2.5},    {"Rc2", 0.25, 1.20}},
                     {{"Rf", {"0.5", "1.2", "2.1", "2.9"}},
                      {"B", {"50", "100", "150", "200", "250", "300"}}});
  static const std::array<double, 4> rf_levels = {0.5, 1.2, 2.1, 2.9};
  static const std::array<double, 6> b_levels = {50.0, 100.0, 150.0, 200.0, 250.0, 300.0};
  return fixed_instance("otl", std::move(schema),
                        [](const MixedPoint& w) {
                          return otl_circuit(w.x[0], w.x[1], w.x[2], w.x[3],
                                             rf_levels[static_cast<size_t>(w.t[0] - 1)],
                                             b_levels[static_cast<size_t>(w.t[1] - 1)]);
                        },
                        60);
}

ProblemInstance make_piston() {
  InputSchema schema({{"M", 30.0, 60.0},   {"S", 0.005, 0.020}, {"V0", 0.002, 0.010},
                      {"Ta", 290.0, 296.0}, {"T0", 340.0, 360.0}},
                     {{"P0", {"9000", "10000", "11000"}},
                      {"k", {"1000", "2000", "3000", "4000", "5000"}}});
  static const std::array<double, 3> p0_levels = {9000.0, 10000.0, 11000.0};
  static const std::array<double, 5> k_levels = {1000.0, 2000.0, 3000.0, 4000.0, 5000.0};
  return fixed_instance("piston", std::move(schema),
                        [](const MixedPoint& w) {
                          return piston_cycle_time(w.x[0], w.x[1], w.x[2], w.x[3], w.x[4],
                                                   p0_levels[static_cast<size_t>(w.t[0] - 1)],
                                                   k_levels[static_cast<size_t>(w.t[1] - 1)]);
                        },
                        100);
}

ProblemInstance make_borehole12() {
  InputSchema schema = borehole_quant_schema({{"t", index_labels(12)}});
  return fixed_instance("borehole12", std::move(schema),
                        [](const MixedPoint& w) {
                          return borehole12(w.x[0], w.x[1], w.x[2], w.x[3], w.x[4], w.x[5],
                                            w.t[0]);
                        },
                        80);
}

}  // namespace

UnderlyingVars make_fn17_vars(int j_dim, std::uint64_t seed) {
  if (j_dim < 1) throw ValidationError("fn17: J must be >= 1");
  const int j = j_dim;
  Eigen::MatrixXd basis(j, j);
  basis.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(j)));
  for (int c = 1; c < j; ++c) {
    Eigen::VectorXd col = Eigen::VectorXd::Constant(j, -1.0);
    col(c) += static_cast<double>(j);
    basis.col(c) = col / (std::sqrt(static_cast<double>(j)) *
                          std::sqrt(static_cast<double>(j - 1)));
  }

  Rng rng(seed);
  UnderlyingVars vars;
  vars.seed = seed;
  vars.values.resize(j, 5);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd coeffs(j);
    coeffs(0) = kMathFn1Coeff[static_cast<size_t>(t)];
    for (int c = 1; c < j; ++c) coeffs(c) = rng.uniform(0.0, 10.0);
    vars.values.col(t) = basis * coeffs;
  }
  return vars;
}

ProblemInstance make_fn17(int j_dim, std::uint64_t seed) {
  UnderlyingVars vars = make_fn17_vars(j_dim, seed);
  InputSchema schema({{"x1", 0.0, 1.0}, {"x2", 0.0, 1.0}}, {{"t", index_labels(5)}});

  ProblemInstance inst;
  inst.name = "fn17:" + std::to_string(j_dim);
  inst.schema = std::move(schema);
  const InputSchema& bound = inst.schema;
  const double inv_sqrt_j = 1.0 / std::sqrt(static_cast<double>(j_dim));
  const Eigen::MatrixXd values = vars.values;
  inst.truth = [bound, values, inv_sqrt_j](const MixedPoint& w) {
    require_valid(w, bound);
    const double coeff = inv_sqrt_j * values.col(w.t[0] - 1).sum();
    return 7.0 * std::sin(2.0 * kPi * w.x[0] - kPi) +
           coeff * std::sin(2.0 * kPi * w.x[1] - kPi);
  };
  inst.underlying = std::move(vars);
  inst.recommended_train_n = 70;
  return inst;
}

UnderlyingVars make_fn18_vars(std::uint64_t seed) {
  Rng rng(seed);
  UnderlyingVars vars;
  vars.seed = seed;
  vars.values.resize(10, 5);
  for (int t = 0; t < 5; ++t) {
    for (int i = 0; i < 10; ++i) vars.values(i, t) = rng.uniform(-50.0, 50.0);
  }
  return vars;
}

ProblemInstance make_fn18_from_vars(const UnderlyingVars& vars) {
  std::vector<QuantInput> quant;
  for (int i = 1; i <= 10; ++i) quant.push_back({"x" + std::to_string(i), -100.0, 100.0});
  InputSchema schema(std::move(quant), {{"t", index_labels(5)}});

  ProblemInstance inst;
  inst.name = "fn18";
  inst.schema = std::move(schema);
  const InputSchema& bound = inst.schema;
  const Eigen::MatrixXd values = vars.values;
  inst.truth = [bound, values](const MixedPoint& w) {
    require_valid(w, bound);
    const auto level = w.t[0] - 1;
    double linear = 0.0;
    double product = 1.0;
    for (int i = 1; i <= 10; ++i) {
      const double xi = w.x[static_cast<size_t>(i - 1)];
      const double vi = values(10 - i, level);  // v_{11-i}
      const double root = std::sqrt(static_cast<double>(i));
      linear += xi * vi / 4000.0;
      product *= std::cos(xi / root) * std::sin(vi / root);
    }
    return linear + product;
  };
  inst.underlying = vars;
  inst.recommended_train_n = 100;
  return inst;
}

ProblemInstance make_fn18(std::uint64_t seed) {
  return make_fn18_from_vars(make_fn18_vars(seed));
}

BenchmarkProblem BenchmarkProblem::by_name(const std::string& name) {
  auto fixed = [&](ProblemInstance (*maker)()) {
    return BenchmarkProblem(name, false, [maker](std::uint64_t) { return maker(); });
  };
  if (name == "mathfn1") return fixed(&make_mathfn1);
  if (name == "mathfn2") return fixed(&make_mathfn2);
  if (name == "bending") return fixed(&make_bending);
  if (name == "borehole") return fixed(&make_borehole);
  if (name == "otl") return fixed(&make_otl);
  if (name == "piston") return fixed(&make_piston);
  if (name == "borehole12") return fixed(&make_borehole12);
  if (name.rfind("fn17:", 0) == 0) {
    const int j = std::stoi(name.substr(5));
    if (j < 1) throw ValidationError("fn17: J must be >= 1");
    return BenchmarkProblem(name, true,
                            [j](std::uint64_t seed) { return make_fn17(j, seed); });
  }
  if (name == "fn18") {
    return BenchmarkProblem(name, true, [](std::uint64_t seed) { return make_fn18(seed); });
  }
  throw ValidationError("unknown problem '" + name + "'");
}

std::vector<std::string> BenchmarkProblem::names() {
  return {"mathfn1", "mathfn2", "bending", "borehole",
          "otl",     "piston",  "borehole12", "fn17:<J>", "fn18"};
}

}  // namespace lvgp

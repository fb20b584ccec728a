#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lvgp/schema.hpp"

namespace lvgp {

// --- closed-form evaluators (native units) --------------------------------

// 7 sin(2 pi x1 - pi) + c_t sin(2 pi x2 - pi), c = (1, 13, 1.5, 9.0, 4.5).
double math_fn1(double x1, double x2, int t);

// sum_i x_i (t_{6-i} - 2)/80 + prod_i cos(x_i/sqrt(i)) sin(50 (t_{6-i} - 2)/sqrt(i)).
double math_fn2(const std::array<double, 5>& x, const std::array<int, 5>& t);

// Cantilever tip deflection L^3 / (3e9 h^4 I(shape)).
double beam_deflection(double length, double height, int shape);

// Water flow through a borehole; rw and hl enter as numeric values here.
double borehole(double tu, double r, double hu, double tl, double l, double kw,
                double rw, double hl);

// Midpoint voltage of the transformerless push-pull circuit.
double otl_circuit(double rb1, double rb2, double rc1, double rc2, double rf, double b);

// Piston cycle time.
double piston_cycle_time(double m, double s, double v0, double ta, double t0,
                         double p0, double k);

// 12-level revision: level -> (rw, hl), levels 1-4 at rw=0.05, 5-8 at 0.10,
// 9-12 at 0.15, hl cycling 700/740/780/820 within each group.
std::pair<double, double> borehole12_underlying(int level);
double borehole12(double tu, double r, double hu, double tl, double l, double kw, int level);

// Normalized moments of inertia for the six beam cross-sections.
extern const std::array<double, 6> kBeamInertia;
extern const std::array<double, 5> kMathFn1Coeff;

// --- problem registry ------------------------------------------------------

// Numeric variables underlying a qualitative factor: one column per level.
struct UnderlyingVars {
  Eigen::MatrixXd values;  // variables x levels
  std::uint64_t seed = 0;
};

struct ProblemInstance {
  std::string name;
  InputSchema schema;
  std::function<double(const MixedPoint&)> truth;  // validates, then evaluates
  std::optional<UnderlyingVars> underlying;        // set when the numeric view exists
  int recommended_train_n = 0;
  int recommended_test_n = 10000;

  double evaluate(const MixedPoint& w) const { return truth(w); }
};

// A named problem family.  Fixed problems ignore the instantiation seed;
// randomized families (fn17:<J>, fn18) draw fresh underlying variables from
// it, one draw per replicate.
class BenchmarkProblem {
 public:
  static BenchmarkProblem by_name(const std::string& name);
  static std::vector<std::string> names();  // fn17 is listed as "fn17:<J>"

  const std::string& name() const { return name_; }
  bool randomized() const { return randomized_; }
  ProblemInstance instantiate(std::uint64_t seed) const { return make_(seed); }

 private:
  BenchmarkProblem(std::string name, bool randomized,
                   std::function<ProblemInstance(std::uint64_t)> make)
      : name_(std::move(name)), randomized_(randomized), make_(std::move(make)) {}

  std::string name_;
  bool randomized_ = false;
  std::function<ProblemInstance(std::uint64_t)> make_;
};

// Underlying-variable construction for the dimension study: basis column 1
// is J^{-1/2} 1 and column j is J^{-1/2}(J-1)^{-1/2}(J e_j - 1), applied to
// [v(t), u_2(t), ..., u_J(t)] with v = (1, 13, 1.5, 9, 4.5) and u uniform on
// [0, 10].  Guarantees J^{-1/2} sum_j v_j(t) = v(t).
UnderlyingVars make_fn17_vars(int j_dim, std::uint64_t seed);
ProblemInstance make_fn17(int j_dim, std::uint64_t seed);

// 10 underlying variables per level, 50 values uniform on [-50, 50].
UnderlyingVars make_fn18_vars(std::uint64_t seed);
ProblemInstance make_fn18(std::uint64_t seed);
// Builds the fn18 surface from given variables (used to force draws in tests).
ProblemInstance make_fn18_from_vars(const UnderlyingVars& vars);

}  // namespace lvgp

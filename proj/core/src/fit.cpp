#include "lvgp/fit.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "lvgp/errors.hpp"
#include "lvgp/rng.hpp"

namespace lvgp {

FittedModel::FittedModel(InputSchema schema, KernelConfig config, Eigen::VectorXd params,
                         PackedDataset train, double jitter, double nll, FitDiagnostics diag)
    : engine_(std::make_shared<const KernelEngine>(std::move(schema), config)),
      params_(std::move(params)),
      train_(std::move(train)),
      jitter_(jitter),
      nll_(nll),
      diag_(diag) {
  engine_->fill_corr_matrix(train_, params_, factor_.r);
  factor_.r.diagonal().array() += jitter_;
  factor_.jitter = jitter_;
  factor_.llt.compute(factor_.r);
  if (factor_.llt.info() != Eigen::Success) {
    throw SingularCorrelationError("fitted correlation matrix lost positive definiteness", params_);
  }

  const auto n = train_.y.size();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const ProfiledMoments pm = profile_mu_sigma(factor_.llt, train_.y);
  mu_ = pm.mu;
  sigma2_ = pm.sigma2;

  const Eigen::VectorXd e = train_.y - mu_ * ones;
  alpha_ = factor_.llt.solve(e);
  // One step of iterative refinement keeps the residual at machine level
  // even when the jittered matrix is badly conditioned.
  alpha_ += factor_.llt.solve(e - factor_.r * alpha_);
  const double residual = (factor_.r * alpha_ - e).norm();
  if (residual > 1e-8 * std::max(train_.y.norm(), 1.0)) {
    throw FitError("prediction weights failed the residual check");
  }

  rinv_ones_ = factor_.llt.solve(ones);
  rinv_ones_ += factor_.llt.solve(ones - factor_.r * rinv_ones_);
  ones_rinv_ones_ = ones.dot(rinv_ones_);
}

std::vector<Eigen::VectorXd> fit_start_sequence(const KernelEngine& engine, int n_starts,
                                                std::uint64_t seed) {
  if (n_starts < 1) throw ValidationError("fit: n_starts must be >= 1");
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(static_cast<size_t>(n_starts));
  for (std::uint64_t block = 0; static_cast<int>(starts.size()) < n_starts; ++block) {
    auto chunk = generate_starts(kStartBlockSize, engine.lower(), engine.upper(),
                                 derive_seed(seed, {block}));
    for (auto& s : chunk) {
      if (static_cast<int>(starts.size()) >= n_starts) break;
      starts.push_back(std::move(s));
    }
  }
  return starts;
}

namespace {

struct StartOutcome {
  double f = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;
  double grad_norm = 0.0;
  bool failed = false;
};

}  // namespace

FittedModel fit(const Dataset& data, const KernelConfig& config, const FitOptions& options) {
  if (data.size() < 2) throw ValidationError("fit: needs at least 2 observations");
  config.check();

  PackedDataset packed = pack_dataset(data);
  const double y_mean = packed.y.mean();
  const double y_var = (packed.y.array() - y_mean).square().sum() / static_cast<double>(packed.y.size());
  if (!(y_var > 0.0)) {
    throw DegenerateDataError("fit: responses are constant");
  }

  KernelEngine engine(data.schema(), config);
  Likelihood likelihood(engine, packed);
  const auto starts = fit_start_sequence(engine, options.n_starts, options.seed);

  const BoxObjective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad,
                                     bool* penalized) {
    if (grad != nullptr) {
      const auto eval = likelihood.value_grad(x, *grad);
      *penalized = eval.penalized;
      return eval.value;
    }
    const auto eval = likelihood.value(x);
    *penalized = eval.penalized;
    return eval.value;
  };

  std::vector<StartOutcome> outcomes(starts.size());
  auto run_start = [&](size_t i) {
    const OptResult res = minimize_box_bfgs(objective, engine.lower(), engine.upper(),
                                            starts[i], options.local);
    outcomes[i] = {res.f, res.x, res.iterations, res.projected_grad_norm, res.penalized};
  };

  int threads = options.threads == 0
                    ? static_cast<int>(std::thread::hardware_concurrency())
                    : options.threads;
  threads = std::max(1, std::min<int>(threads, static_cast<int>(starts.size())));
  if (threads == 1) {
    for (size_t i = 0; i < starts.size(); ++i) run_start(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < starts.size(); i = next.fetch_add(1)) {
          run_start(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  int winner = -1;
  int failed = 0;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].failed) {
      ++failed;
      continue;
    }
    if (winner < 0 || outcomes[i].f < outcomes[static_cast<size_t>(winner)].f) {
      winner = static_cast<int>(i);
    }
  }
  if (winner < 0) {
    throw FitError("fit: all " + std::to_string(outcomes.size()) +
                   " starts failed factorization at the jitter cap");
  }

  const auto& best = outcomes[static_cast<size_t>(winner)];
  const auto final_eval = likelihood.value(best.x);
  if (final_eval.penalized) {
    throw FitError("fit: winning start lost its factorization on re-evaluation");
  }

  FitDiagnostics diag;
  diag.winning_start = winner;
  diag.iterations = best.iterations;
  diag.grad_norm = best.grad_norm;
  diag.n_starts = static_cast<int>(outcomes.size());
  diag.failed_starts = failed;

  return FittedModel(data.schema(), config, best.x, std::move(packed), final_eval.jitter,
                     final_eval.value, diag);
}

}  // namespace lvgp

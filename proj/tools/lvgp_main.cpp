#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "lvgp/bench.hpp"
#include "lvgp/doe.hpp"
#include "lvgp/fit.hpp"
#include "lvgp/model_io.hpp"
#include "lvgp/predict.hpp"
#include "lvgp/problems.hpp"
#include "lvgp/rng.hpp"
#include "lvgp/schema_io.hpp"

namespace {

struct DoeArgs {
  std::string problem;
  int n = 0;
  std::uint64_t seed = 0;
  std::string out;
  int budget = 10000;
  bool jitter = false;
};

int run_doe(const DoeArgs& args) {
  const auto problem = lvgp::BenchmarkProblem::by_name(args.problem);
  const auto instance = problem.instantiate(lvgp::derive_seed(args.seed, {5}));
  if (args.n == 0 || args.out.empty()) {
    std::cout << lvgp::schema_to_json_string(instance.schema) << "\n";
    std::cout << "# recommended training size: " << instance.recommended_train_n << "\n";
    return 0;
  }
  lvgp::MaximinOptions options;
  options.budget = args.budget;
  options.jitter_within_strata = args.jitter;
  lvgp::Design design = lvgp::maximin_lhd(args.n, instance.schema.num_quant(),
                                          lvgp::derive_seed(args.seed, {1}), options);
  design.levels = lvgp::assign_levels(args.n, instance.schema, lvgp::derive_seed(args.seed, {2}));
  design.seed = args.seed;
  lvgp::write_design_csv(design, instance.schema, args.out);
  std::cout << "wrote " << args.n << "-point design to " << args.out
            << " (maximin " << lvgp::format_double(design.maximin_score) << ")\n";
  return 0;
}

struct FitArgs {
  std::string problem;
  int n = 0;
  std::string schema_path;
  std::string data_path;
  std::string model = "LV2";
  int starts = 200;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

int run_fit(const FitArgs& args) {
  lvgp::KernelConfig config;
  config.family = lvgp::kernel_family_from_string(args.model);

  lvgp::Dataset data = [&] {
    if (!args.problem.empty()) {
      if (args.n < 2) throw lvgp::ValidationError("fit: --n must be >= 2 with --problem");
      const auto problem = lvgp::BenchmarkProblem::by_name(args.problem);
      const auto instance = problem.instantiate(lvgp::derive_seed(args.seed, {5}));
      lvgp::Design design =
          lvgp::maximin_lhd(args.n, instance.schema.num_quant(), lvgp::derive_seed(args.seed, {1}));
      design.levels =
          lvgp::assign_levels(args.n, instance.schema, lvgp::derive_seed(args.seed, {2}));
      return lvgp::evaluate_design(design, instance.schema, instance.truth);
    }
    if (args.schema_path.empty() || args.data_path.empty()) {
      throw lvgp::ValidationError("fit: give either --problem/--n or --schema/--data");
    }
    const lvgp::InputSchema schema = lvgp::read_schema_json(args.schema_path);
    return lvgp::read_dataset_csv(schema, args.data_path);
  }();

  lvgp::FitOptions options;
  options.n_starts = args.starts;
  options.seed = lvgp::derive_seed(args.seed, {4});
  options.threads = args.threads;
  const lvgp::FittedModel model = lvgp::fit(data, config, options);
  lvgp::save_model(model, args.out);
  std::cout << "fit " << args.model << " on n=" << data.size()
            << ", nll=" << lvgp::format_double(model.nll())
            << ", winning start " << model.diagnostics().winning_start << ", saved to "
            << args.out << "\n";
  return 0;
}

int run_latent(const std::string& model_path, const std::string& out) {
  const lvgp::FittedModel model = lvgp::load_model(model_path);
  lvgp::export_latent(model, out);
  std::cout << "wrote latent coordinates to " << out << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& in, const std::string& out) {
  const lvgp::FittedModel model = lvgp::load_model(model_path);
  const auto points = lvgp::read_points_csv(model.schema(), in);
  const auto preds = lvgp::predict_batch(model, points);
  lvgp::write_predictions_csv(preds, out);
  std::cout << "predicted " << preds.size() << " points to " << out << "\n";
  return 0;
}

int run_bench(const std::string& config_path, int threads_override) {
  lvgp::ExperimentConfig config = lvgp::load_experiment_config(config_path);
  if (threads_override > 0) config.threads = threads_override;
  const auto records = lvgp::run_experiment(config);
  const auto groups = lvgp::summarize(records);
  std::cout << lvgp::summary_table(groups);
  if (!config.out_csv.empty()) std::cout << "results written to " << config.out_csv << "\n";
  if (!config.summary_json.empty()) {
    std::cout << "summary written to " << config.summary_json << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process surrogate modeling with mixed quantitative and "
               "qualitative inputs"};
  app.require_subcommand(1);

  DoeArgs doe_args;
  auto* doe = app.add_subcommand("doe", "Print a problem schema or generate a training design");
  doe->add_option("--problem", doe_args.problem, "Problem name (see README for the list)")
      ->required();
  doe->add_option("--n", doe_args.n, "Design size; omit to print the schema");
  doe->add_option("--seed", doe_args.seed, "Design seed");
  doe->add_option("--out", doe_args.out, "Output CSV path");
  doe->add_option("--budget", doe_args.budget, "Maximin swap proposals");
  doe->add_flag("--jitter-strata", doe_args.jitter, "Sample within LHD strata instead of midpoints");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a GP model and save it");
  fit_cmd->add_option("--problem", fit_args.problem, "Benchmark problem to draw training data from");
  fit_cmd->add_option("--n", fit_args.n, "Training design size (with --problem)");
  fit_cmd->add_option("--schema", fit_args.schema_path, "Schema JSON (with --data)");
  fit_cmd->add_option("--data", fit_args.data_path, "Training CSV (with --schema)");
  fit_cmd->add_option("--model", fit_args.model, "LV1|LV2|UC|MC|AddUC|BNGP");
  fit_cmd->add_option("--starts", fit_args.starts, "Number of optimization starts");
  fit_cmd->add_option("--seed", fit_args.seed, "Master seed");
  fit_cmd->add_option("--threads", fit_args.threads, "Worker threads (0 = all cores)");
  fit_cmd->add_option("--out", fit_args.out, "Model file to write")->required();

  std::string latent_model, latent_out;
  auto* latent = app.add_subcommand("latent", "Export latent coordinates of a fitted LV model");
  latent->add_option("--model", latent_model, "Model file")->required();
  latent->add_option("--out", latent_out, "Output CSV")->required();

  std::string pred_model, pred_in, pred_out;
  auto* predict = app.add_subcommand("predict", "Predict mean,variance for query points");
  predict->add_option("--model", pred_model, "Model file")->required();
  predict->add_option("--in", pred_in, "Query CSV")->required();
  predict->add_option("--out", pred_out, "Output CSV")->required();

  std::string bench_config;
  int bench_threads = 0;
  auto* bench = app.add_subcommand("bench", "Run a replicated RRMSE experiment");
  bench->add_option("--config", bench_config, "Experiment config file")->required();
  bench->add_option("--threads", bench_threads, "Override the config's thread count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (doe->parsed()) return run_doe(doe_args);
    if (fit_cmd->parsed()) return run_fit(fit_args);
    if (latent->parsed()) return run_latent(latent_model, latent_out);
    if (predict->parsed()) return run_predict(pred_model, pred_in, pred_out);
    if (bench->parsed()) return run_bench(bench_config, bench_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lvgp/doe.hpp"
#include "lvgp/fit.hpp"
#include "lvgp/problems.hpp"

namespace lvgp {

// sqrt( sum (pred_i - truth_i)^2 / sum (truth_i - mean(truth))^2 ).
double rrmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth);

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<std::string> models;  // subset of LV1, LV2, UC, MC, AddUC, BNGP
  std::vector<int> train_sizes;
  int test_size = 10000;
  int replicates = 30;
  int n_starts = 200;
  std::uint64_t seed = 0;
  std::string out_csv;
  std::string summary_json;
  std::string latent_dir;  // when set, latent CSVs are written for LV fits
  bool record_timing = true;
  int threads = 1;
  int lhd_budget = 10000;

  void check() const;
};

struct ResultRecord {
  std::string problem;
  std::string model;
  int replicate = 0;  // 1-based
  int n = 0;
  int test_size = 0;
  bool has_rrmse = false;
  double rrmse_value = 0.0;
  bool has_nll = false;
  double nll = 0.0;
  double fit_seconds = 0.0;
  double jitter = 0.0;
  std::uint64_t design_seed = 0;
  std::uint64_t level_seed = 0;
  std::uint64_t test_seed = 0;
  std::uint64_t start_seed = 0;
  std::string error;  // empty on success; failures never abort the experiment
};

// One replicate's shared inputs: every model in the replicate sees identical
// training and test data.
struct ReplicateData {
  ProblemInstance instance;
  Design design;
  Dataset train;
  std::vector<MixedPoint> test_points;
  Eigen::VectorXd test_truth;
  std::uint64_t design_seed = 0;
  std::uint64_t level_seed = 0;
  std::uint64_t test_seed = 0;
  std::uint64_t start_seed = 0;
};

// Seed derivation (documented so any record can be re-run in isolation):
//   cell   = derive_seed(master, {fnv1a(problem), n})
//   design = derive_seed(cell, {replicate, 1})    level = {replicate, 2}
//   test   = derive_seed(cell, {replicate, 3})    start = {replicate, 4}
//   draw   = derive_seed(cell, {replicate, 5})    (underlying-variable draws)
ReplicateData make_replicate(const BenchmarkProblem& problem, int n, int test_size,
                             std::uint64_t master_seed, int replicate, int lhd_budget = 10000);

// Numeric-only (BNGP) view of a replicate: the qualitative factor replaced
// by its underlying numerical variables, same responses and test truth.
struct NumericView {
  InputSchema schema;
  Dataset train;
  std::vector<MixedPoint> test_points;
};
NumericView make_numeric_view(const ReplicateData& rep);

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

std::string results_csv_string(const std::vector<ResultRecord>& records);
void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path);

struct GroupSummary {
  std::string problem;
  std::string model;
  int n = 0;
  int count = 0;   // records with an RRMSE
  int errors = 0;  // excluded failed fits
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

// Median and quartiles (linear interpolation between order statistics) of
// RRMSE per (problem, n, model) group.
std::vector<GroupSummary> summarize(const std::vector<ResultRecord>& records);
void write_summary_json(const std::vector<GroupSummary>& groups, const std::string& path);
std::string summary_table(const std::vector<GroupSummary>& groups);

// Latent coordinates of every factor level: columns factor,level,label,z1,z2.
void export_latent(const FittedModel& model, const std::string& path);

// Key = value config file; lists in brackets, strings quoted, # comments.
// Keys: problem, models, n, N, replicates, n_starts, seed, out, summary,
// latent_dir, record_timing, threads, lhd_budget.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace lvgp

#include "lvgp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "lvgp/errors.hpp"
#include "lvgp/predict.hpp"
#include "lvgp/rng.hpp"
#include "lvgp/schema_io.hpp"

namespace lvgp {

double rrmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth) {
  if (pred.size() != truth.size()) throw ValidationError("rrmse: length mismatch");
  if (truth.size() < 2) throw ValidationError("rrmse: needs at least 2 points");
  const double mean = truth.mean();
  const double denom = (truth.array() - mean).square().sum();
  if (!(denom > 0.0)) {
    throw DegenerateDataError("rrmse: constant truth vector");
  }
  const double num = (pred - truth).array().square().sum();
  return std::sqrt(num / denom);
}

void ExperimentConfig::check() const {
  if (problems.empty()) throw ValidationError("experiment: no problems given");
  if (models.empty()) throw ValidationError("experiment: no models given");
  if (train_sizes.empty()) throw ValidationError("experiment: no training sizes given");
  for (int n : train_sizes) {
    if (n < 2) throw ValidationError("experiment: training size must be >= 2");
  }
  if (replicates < 1) throw ValidationError("experiment: replicates must be >= 1");
  if (test_size < 2) throw ValidationError("experiment: test size must be >= 2");
  if (n_starts < 1) throw ValidationError("experiment: n_starts must be >= 1");
  for (const auto& m : models) kernel_family_from_string(m);  // throws on junk
  for (const auto& p : problems) BenchmarkProblem::by_name(p);
}

ReplicateData make_replicate(const BenchmarkProblem& problem, int n, int test_size,
                             std::uint64_t master_seed, int replicate, int lhd_budget) {
  const std::uint64_t cell =
      derive_seed(master_seed, {fnv1a(problem.name().c_str()), static_cast<std::uint64_t>(n)});
  const auto rep = static_cast<std::uint64_t>(replicate);

  const std::uint64_t design_seed = derive_seed(cell, {rep, 1});
  const std::uint64_t level_seed = derive_seed(cell, {rep, 2});
  const std::uint64_t test_seed = derive_seed(cell, {rep, 3});
  const std::uint64_t start_seed = derive_seed(cell, {rep, 4});
  ProblemInstance instance = problem.instantiate(derive_seed(cell, {rep, 5}));

  const InputSchema& schema = instance.schema;
  MaximinOptions mm;
  mm.budget = lhd_budget;
  Design design = maximin_lhd(n, schema.num_quant(), design_seed, mm);
  design.levels = assign_levels(n, schema, level_seed);
  Dataset train = evaluate_design(design, schema, instance.truth);

  const Design test = uniform_test_set(test_size, schema, test_seed);
  std::vector<MixedPoint> test_points = design_points(test, schema);
  Eigen::VectorXd test_truth(test_size);
  for (int i = 0; i < test_size; ++i) {
    test_truth(i) = instance.truth(test_points[static_cast<size_t>(i)]);
  }
  return ReplicateData{std::move(instance), std::move(design),   std::move(train),
                       std::move(test_points), std::move(test_truth), design_seed,
                       level_seed,          test_seed,           start_seed};
}

NumericView make_numeric_view(const ReplicateData& rep) {
  if (!rep.instance.underlying.has_value()) {
    throw ValidationError("BNGP requested for problem '" + rep.instance.name +
                          "', which exposes no underlying numerical variables");
  }
  if (rep.instance.schema.num_qual() != 1) {
    throw ValidationError("numeric view supports single-factor problems");
  }
  const Eigen::MatrixXd& values = rep.instance.underlying->values;
  const auto d = values.rows();

  std::vector<QuantInput> quant = rep.instance.schema.quant_inputs();
  for (Eigen::Index v = 0; v < d; ++v) {
    double lo = values.row(v).minCoeff();
    double hi = values.row(v).maxCoeff();
    if (!(hi - lo > 1e-9)) {  // constant underlying variable; keep range valid
      lo -= 0.5;
      hi += 0.5;
    }
    quant.push_back({"v" + std::to_string(v + 1), lo, hi});
  }
  InputSchema schema(std::move(quant), {});

  auto to_numeric = [&](const MixedPoint& w) {
    MixedPoint out;
    out.x = w.x;
    const int level = w.t[0] - 1;
    for (Eigen::Index v = 0; v < d; ++v) out.x.push_back(values(v, level));
    return out;
  };

  std::vector<MixedPoint> train_points;
  std::vector<double> y(rep.train.responses());
  train_points.reserve(static_cast<size_t>(rep.train.size()));
  for (int i = 0; i < rep.train.size(); ++i) train_points.push_back(to_numeric(rep.train.point(i)));

  std::vector<MixedPoint> test_points;
  test_points.reserve(rep.test_points.size());
  for (const auto& w : rep.test_points) test_points.push_back(to_numeric(w));

  Dataset train(schema, std::move(train_points), std::move(y));
  return NumericView{std::move(schema), std::move(train), std::move(test_points)};
}

namespace {

std::string sanitize_csv_field(std::string s) {
  for (auto& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

ResultRecord run_one_model(const ReplicateData& rep, const std::string& model_name,
                           const ExperimentConfig& config, int replicate, int n) {
  ResultRecord rec;
  rec.problem = rep.instance.name;
  rec.model = model_name;
  rec.replicate = replicate;
  rec.n = n;
  rec.test_size = config.test_size;
  rec.design_seed = rep.design_seed;
  rec.level_seed = rep.level_seed;
  rec.test_seed = rep.test_seed;
  rec.start_seed = rep.start_seed;

  try {
    KernelConfig kconfig;
    kconfig.family = kernel_family_from_string(model_name);

    const Dataset* train = &rep.train;
    const std::vector<MixedPoint>* test_points = &rep.test_points;
    std::optional<NumericView> view;
    if (kconfig.family == KernelFamily::NumericOnly) {
      view.emplace(make_numeric_view(rep));
      train = &view->train;
      test_points = &view->test_points;
    }

    FitOptions options;
    options.n_starts = config.n_starts;
    options.seed = rep.start_seed;
    options.threads = config.threads;

    const auto t0 = std::chrono::steady_clock::now();
    const FittedModel model = fit(*train, kconfig, options);
    const auto t1 = std::chrono::steady_clock::now();

    const auto preds = predict_batch(model, *test_points);
    Eigen::VectorXd mean(static_cast<Eigen::Index>(preds.size()));
    for (Eigen::Index i = 0; i < mean.size(); ++i) mean(i) = preds[static_cast<size_t>(i)].mean;

    rec.rrmse_value = rrmse(mean, rep.test_truth);
    rec.has_rrmse = true;
    rec.nll = model.nll();
    rec.has_nll = true;
    rec.jitter = model.jitter();
    if (config.record_timing) {
      rec.fit_seconds = std::chrono::duration<double>(t1 - t0).count();
    }

    if (!config.latent_dir.empty() && model.config().is_latent()) {
      std::filesystem::create_directories(config.latent_dir);
      std::ostringstream name;
      name << config.latent_dir << "/" << rec.problem << "_" << rec.model << "_rep"
           << replicate << "_n" << n << ".csv";
      export_latent(model, name.str());
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  config.check();
  std::vector<ResultRecord> records;
  for (const auto& problem_name : config.problems) {
    const BenchmarkProblem problem = BenchmarkProblem::by_name(problem_name);
    for (int n : config.train_sizes) {
      for (int rep = 1; rep <= config.replicates; ++rep) {
        const ReplicateData data =
            make_replicate(problem, n, config.test_size, config.seed, rep, config.lhd_budget);
        for (const auto& model_name : config.models) {
          records.push_back(run_one_model(data, model_name, config, rep, n));
        }
      }
    }
  }
  std::sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return std::tie(a.problem, a.n, a.model, a.replicate) <
           std::tie(b.problem, b.n, b.model, b.replicate);
  });
  if (!config.out_csv.empty()) write_results_csv(records, config.out_csv);
  if (!config.summary_json.empty()) write_summary_json(summarize(records), config.summary_json);
  return records;
}

std::string results_csv_string(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out << "problem,model,replicate,n,N,rrmse,nll,fit_seconds,jitter,design_seed,"
         "level_seed,test_seed,start_seed,error\n";
  for (const auto& r : records) {
    out << r.problem << "," << r.model << "," << r.replicate << "," << r.n << ","
        << r.test_size << ",";
    if (r.has_rrmse) out << format_double(r.rrmse_value);
    out << ",";
    if (r.has_nll) out << format_double(r.nll);
    out << "," << format_double(r.fit_seconds) << ",";
    if (r.error.empty()) out << format_double(r.jitter);
    out << "," << r.design_seed << "," << r.level_seed << "," << r.test_seed << ","
        << r.start_seed << "," << sanitize_csv_field(r.error) << "\n";
  }
  return out.str();
}

void write_results_csv(const std::vector<ResultRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write results file '" + path + "'");
  out << results_csv_string(records);
}

namespace {

double quantile_linear(const std::vector<double>& sorted, double p) {
  const auto n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<GroupSummary> summarize(const std::vector<ResultRecord>& records) {
  if (records.empty()) throw ValidationError("summarize: no records");
  std::vector<GroupSummary> groups;
  std::vector<std::vector<double>> values;
  auto group_index = [&](const ResultRecord& r) {
    for (size_t i = 0; i < groups.size(); ++i) {
      if (groups[i].problem == r.problem && groups[i].model == r.model && groups[i].n == r.n) {
        return i;
      }
    }
    groups.push_back({r.problem, r.model, r.n, 0, 0, 0.0, 0.0, 0.0});
    values.emplace_back();
    return groups.size() - 1;
  };

  for (const auto& r : records) {
    const size_t idx = group_index(r);
    if (r.has_rrmse) {
      values[idx].push_back(r.rrmse_value);
      ++groups[idx].count;
    } else {
      ++groups[idx].errors;
    }
  }
  for (size_t i = 0; i < groups.size(); ++i) {
    auto& g = groups[i];
    if (g.count == 0) throw ValidationError("summarize: group " + g.problem + "/" + g.model +
                                            " has no successful fits");
    auto& v = values[i];
    std::sort(v.begin(), v.end());
    g.q25 = quantile_linear(v, 0.25);
    g.median = quantile_linear(v, 0.50);
    g.q75 = quantile_linear(v, 0.75);
  }
  return groups;
}

void write_summary_json(const std::vector<GroupSummary>& groups, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : groups) {
    arr.push_back({{"problem", g.problem}, {"model", g.model}, {"n", g.n},
                   {"count", g.count}, {"errors", g.errors}, {"median", g.median},
                   {"q25", g.q25}, {"q75", g.q75}});
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write summary file '" + path + "'");
  out << arr.dump(2) << "\n";
}

std::string summary_table(const std::vector<GroupSummary>& groups) {
  std::ostringstream out;
  out << "problem,n,model,count,errors,q25,median,q75\n";
  for (const auto& g : groups) {
    out << g.problem << "," << g.n << "," << g.model << "," << g.count << "," << g.errors
        << "," << format_double(g.q25) << "," << format_double(g.median) << ","
        << format_double(g.q75) << "\n";
  }
  return out.str();
}

void export_latent(const FittedModel& model, const std::string& path) {
  if (!model.config().is_latent()) {
    throw UnsupportedKernelError("export_latent: model does not use a latent-variable kernel");
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write latent file '" + path + "'");
  out << "factor,level,label,z1,z2\n";
  for (int j = 0; j < model.schema().num_qual(); ++j) {
    const Eigen::MatrixXd z = latent_coordinates(model, j);
    for (Eigen::Index l = 0; l < z.rows(); ++l) {
      const double z2 = z.cols() > 1 ? z(l, 1) : 0.0;
      out << j + 1 << "," << l + 1 << ","
          << model.schema().qual(j).labels[static_cast<size_t>(l)] << ","
          << format_double(z(l, 0)) << "," << format_double(z2) << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// config file

namespace {

struct ConfigValue {
  std::string raw;
  std::vector<std::string> list;
  bool is_list = false;
};

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

ConfigValue parse_value(const std::string& raw) {
  ConfigValue v;
  v.raw = raw;
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') throw ValidationError("config: unterminated list: " + raw);
    v.is_list = true;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string cleaned = unquote(strip(item));
      if (!cleaned.empty()) v.list.push_back(cleaned);
    }
  } else {
    v.list.push_back(unquote(raw));
  }
  return v;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");

  ExperimentConfig config;
  config.replicates = 30;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool in_quote = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line = line.substr(0, i);
        break;
      }
    }
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const ConfigValue value = parse_value(strip(line.substr(eq + 1)));

    auto as_int = [&](const std::string& s) {
      try {
        return std::stoll(s);
      } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': expected integer, got '" + s + "'");
      }
    };
    auto as_bool = [&](const std::string& s) {
      if (s == "true") return true;
      if (s == "false") return false;
      throw ValidationError("config key '" + key + "': expected true/false");
    };

    if (key == "problem" || key == "problems") {
      config.problems = value.list;
    } else if (key == "models" || key == "model") {
      config.models = value.list;
    } else if (key == "n") {
      config.train_sizes.clear();
      for (const auto& s : value.list) config.train_sizes.push_back(static_cast<int>(as_int(s)));
    } else if (key == "N" || key == "test_size") {
      config.test_size = static_cast<int>(as_int(value.list.at(0)));
    } else if (key == "replicates") {
      config.replicates = static_cast<int>(as_int(value.list.at(0)));
    } else if (key == "n_starts" || key == "starts") {
      config.n_starts = static_cast<int>(as_int(value.list.at(0)));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(as_int(value.list.at(0)));
    } else if (key == "out") {
      config.out_csv = value.list.at(0);
    } else if (key == "summary") {
      config.summary_json = value.list.at(0);
    } else if (key == "latent_dir") {
      config.latent_dir = value.list.at(0);
    } else if (key == "record_timing") {
      config.record_timing = as_bool(value.list.at(0));
    } else if (key == "threads") {
      config.threads = static_cast<int>(as_int(value.list.at(0)));
    } else if (key == "lhd_budget") {
      config.lhd_budget = static_cast<int>(as_int(value.list.at(0)));
    } else {
      throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return config;
}

}  // namespace lvgp

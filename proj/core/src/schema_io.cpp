#include "lvgp/schema_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "internal_json.hpp"
#include "lvgp/errors.hpp"

namespace lvgp {

namespace detail {

nlohmann::json schema_to_json(const InputSchema& schema) {
  nlohmann::json j;
  j["quantitative"] = nlohmann::json::array();
  for (const auto& q : schema.quant_inputs()) {
    j["quantitative"].push_back({{"name", q.name}, {"lower", q.lower}, {"upper", q.upper}});
  }
  j["qualitative"] = nlohmann::json::array();
  for (const auto& f : schema.qual_factors()) {
    j["qualitative"].push_back({{"name", f.name}, {"levels", f.labels}});
  }
  return j;
}

InputSchema schema_from_json(const nlohmann::json& j) {
  std::vector<QuantInput> quant;
  std::vector<QualFactor> qual;
  for (const auto& q : j.value("quantitative", nlohmann::json::array())) {
    quant.push_back({q.at("name").get<std::string>(), q.at("lower").get<double>(),
                     q.at("upper").get<double>()});
  }
  for (const auto& f : j.value("qualitative", nlohmann::json::array())) {
    qual.push_back({f.at("name").get<std::string>(),
                    f.at("levels").get<std::vector<std::string>>()});
  }
  return InputSchema(std::move(quant), std::move(qual));
}

nlohmann::json kernel_config_to_json(const KernelConfig& config) {
  return {{"family", to_string(config.family)},
          {"jitter", {{"initial", config.jitter.initial},
                      {"escalation", config.jitter.escalation},
                      {"cap", config.jitter.cap}}},
          {"theta_lower", config.theta_lower},
          {"theta_upper", config.theta_upper},
          {"latent_lower", config.latent_lower},
          {"latent_upper", config.latent_upper},
          {"log_var_lower", config.log_var_lower},
          {"log_var_upper", config.log_var_upper}};
}

KernelConfig kernel_config_from_json(const nlohmann::json& j) {
  KernelConfig config;
  config.family = kernel_family_from_string(j.at("family").get<std::string>());
  const auto& jj = j.at("jitter");
  config.jitter.initial = jj.at("initial").get<double>();
  config.jitter.escalation = jj.at("escalation").get<double>();
  config.jitter.cap = jj.at("cap").get<double>();
  config.theta_lower = j.at("theta_lower").get<double>();
  config.theta_upper = j.at("theta_upper").get<double>();
  config.latent_lower = j.at("latent_lower").get<double>();
  config.latent_upper = j.at("latent_upper").get<double>();
  config.log_var_lower = j.at("log_var_lower").get<double>();
  config.log_var_upper = j.at("log_var_upper").get<double>();
  config.check();
  return config;
}

}  // namespace detail

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string schema_to_json_string(const InputSchema& schema) {
  return detail::schema_to_json(schema).dump(2);
}

InputSchema schema_from_json_string(const std::string& text) {
  return detail::schema_from_json(nlohmann::json::parse(text));
}

InputSchema read_schema_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open schema file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return detail::schema_from_json(j);
}

void write_schema_json(const InputSchema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write schema file '" + path + "'");
  out << detail::schema_to_json(schema).dump(2) << "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back("");
  return fields;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(context + ": cannot parse number '" + s + "'");
  }
}

int parse_level(const QualFactor& factor, const std::string& cell, const std::string& context) {
  for (int l = 0; l < factor.num_levels(); ++l) {
    if (factor.labels[static_cast<size_t>(l)] == cell) return l + 1;
  }
  try {
    size_t pos = 0;
    const int v = std::stoi(cell, &pos);
    if (pos == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(context + ": '" + cell + "' is neither a level label of factor '" +
                        factor.name + "' nor a level index");
}

struct ColumnMap {
  std::vector<int> quant;  // column index per quantitative input
  std::vector<int> qual;   // column index per factor
  int y = -1;
};

ColumnMap map_columns(const InputSchema& schema, const std::vector<std::string>& header,
                      bool need_y, const std::string& path) {
  ColumnMap map;
  auto find = [&](const std::string& name) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return static_cast<int>(c);
    }
    return -1;
  };
  for (const auto& q : schema.quant_inputs()) {
    const int c = find(q.name);
    if (c < 0) throw ValidationError(path + ": missing column '" + q.name + "'");
    map.quant.push_back(c);
  }
  for (const auto& f : schema.qual_factors()) {
    const int c = find(f.name);
    if (c < 0) throw ValidationError(path + ": missing column '" + f.name + "'");
    map.qual.push_back(c);
  }
  map.y = find("y");
  if (need_y && map.y < 0) throw ValidationError(path + ": missing column 'y'");
  return map;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open CSV file '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw ValidationError(path + ": empty CSV");
  return rows;
}

MixedPoint parse_point(const InputSchema& schema, const ColumnMap& map,
                       const std::vector<std::string>& row, const std::string& context) {
  MixedPoint w;
  for (size_t i = 0; i < map.quant.size(); ++i) {
    w.x.push_back(parse_double(row.at(static_cast<size_t>(map.quant[i])), context));
  }
  for (size_t j = 0; j < map.qual.size(); ++j) {
    w.t.push_back(parse_level(schema.qual(static_cast<int>(j)),
                              row.at(static_cast<size_t>(map.qual[j])), context));
  }
  return w;
}

}  // namespace

Dataset read_dataset_csv(const InputSchema& schema, const std::string& path) {
  const auto rows = read_csv_rows(path);
  const ColumnMap map = map_columns(schema, rows.front(), true, path);
  std::vector<MixedPoint> points;
  std::vector<double> y;
  for (size_t r = 1; r < rows.size(); ++r) {
    const std::string context = path + " row " + std::to_string(r + 1);
    points.push_back(parse_point(schema, map, rows[r], context));
    y.push_back(parse_double(rows[r].at(static_cast<size_t>(map.y)), context));
  }
  return Dataset(schema, std::move(points), std::move(y));
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write CSV file '" + path + "'");
  const auto& schema = data.schema();
  for (int c = 0; c < schema.num_quant(); ++c) out << schema.quant(c).name << ",";
  for (int j = 0; j < schema.num_qual(); ++j) out << schema.qual(j).name << ",";
  out << "y\n";
  for (int i = 0; i < data.size(); ++i) {
    const auto& w = data.point(i);
    for (double x : w.x) out << format_double(x) << ",";
    for (size_t j = 0; j < w.t.size(); ++j) {
      out << schema.qual(static_cast<int>(j)).labels[static_cast<size_t>(w.t[j] - 1)] << ",";
    }
    out << format_double(data.y(i)) << "\n";
  }
}

std::vector<MixedPoint> read_points_csv(const InputSchema& schema, const std::string& path) {
  const auto rows = read_csv_rows(path);
  const ColumnMap map = map_columns(schema, rows.front(), false, path);
  std::vector<MixedPoint> points;
  for (size_t r = 1; r < rows.size(); ++r) {
    points.push_back(parse_point(schema, map, rows[r], path + " row " + std::to_string(r + 1)));
  }
  return points;
}

void write_points_csv(const InputSchema& schema, const std::vector<MixedPoint>& points,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write CSV file '" + path + "'");
  for (int c = 0; c < schema.num_quant(); ++c) {
    out << schema.quant(c).name << (c + 1 < schema.num_quant() || schema.num_qual() > 0 ? "," : "");
  }
  for (int j = 0; j < schema.num_qual(); ++j) {
    out << schema.qual(j).name << (j + 1 < schema.num_qual() ? "," : "");
  }
  out << "\n";
  for (const auto& w : points) {
    for (size_t c = 0; c < w.x.size(); ++c) {
      out << format_double(w.x[c]) << (c + 1 < w.x.size() || !w.t.empty() ? "," : "");
    }
    for (size_t j = 0; j < w.t.size(); ++j) {
      out << schema.qual(static_cast<int>(j)).labels[static_cast<size_t>(w.t[j] - 1)]
          << (j + 1 < w.t.size() ? "," : "");
    }
    out << "\n";
  }
}

void write_predictions_csv(const std::vector<Prediction>& predictions, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write CSV file '" + path + "'");
  out << "mean,variance\n";
  for (const auto& p : predictions) {
    out << format_double(p.mean) << "," << format_double(p.variance) << "\n";
  }
}

}  // namespace lvgp

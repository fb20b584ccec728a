#pragma once

#include <string>
#include <vector>

#include "lvgp/predict.hpp"
#include "lvgp/schema.hpp"

namespace lvgp {

// Schema document: {"quantitative": [{name, lower, upper}...],
//                   "qualitative": [{name, levels: [labels...]}...]}
InputSchema read_schema_json(const std::string& path);
void write_schema_json(const InputSchema& schema, const std::string& path);
std::string schema_to_json_string(const InputSchema& schema);
InputSchema schema_from_json_string(const std::string& text);

// Dataset CSV: one column per input (quantitative numeric, qualitative level
// labels or 1-based indices) plus a final `y` column.  Columns are matched
// to the schema by header name.
Dataset read_dataset_csv(const InputSchema& schema, const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

// Query points: same columns as a dataset without `y`.
std::vector<MixedPoint> read_points_csv(const InputSchema& schema, const std::string& path);
void write_points_csv(const InputSchema& schema, const std::vector<MixedPoint>& points,
                      const std::string& path);

// Prediction CSV with columns `mean,variance`.
void write_predictions_csv(const std::vector<Prediction>& predictions, const std::string& path);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace lvgp

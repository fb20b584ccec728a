#include "lvgp/schema.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lvgp {

InputSchema::InputSchema(std::vector<QuantInput> quant, std::vector<QualFactor> qual)
    : quant_(std::move(quant)), qual_(std::move(qual)) {
  for (const auto& q : quant_) {
    if (!(q.lower < q.upper)) {
      throw ValidationError("input '" + q.name + "': lower bound must be below upper bound");
    }
  }
  for (const auto& f : qual_) {
    if (f.num_levels() < 2) {
      throw ValidationError("factor '" + f.name + "': needs at least 2 levels");
    }
    std::set<std::string> seen(f.labels.begin(), f.labels.end());
    if (seen.size() != f.labels.size()) {
      throw ValidationError("factor '" + f.name + "': level labels must be unique");
    }
  }
}

InputSchema InputSchema::unit_cube() const {
  std::vector<QuantInput> quant = quant_;
  for (auto& q : quant) {
    q.lower = 0.0;
    q.upper = 1.0;
  }
  return InputSchema(std::move(quant), qual_);
}

std::vector<Violation> validate(const MixedPoint& point, const InputSchema& schema) {
  std::vector<Violation> out;
  const auto p = static_cast<size_t>(schema.num_quant());
  const auto q = static_cast<size_t>(schema.num_qual());
  if (point.x.size() != p) {
    out.push_back({"expected " + std::to_string(p) + " quantitative inputs, got " +
                   std::to_string(point.x.size())});
  }
  if (point.t.size() != q) {
    out.push_back({"expected " + std::to_string(q) + " qualitative factors, got " +
                   std::to_string(point.t.size())});
  }
  for (size_t i = 0; i < std::min(point.x.size(), p); ++i) {
    const auto& in = schema.quant(static_cast<int>(i));
    if (!(point.x[i] >= in.lower && point.x[i] <= in.upper)) {
      std::ostringstream os;
      os << "input " << i + 1 << " ('" << in.name << "') value " << point.x[i]
         << " outside [" << in.lower << ", " << in.upper << "]";
      out.push_back({os.str()});
    }
  }
  for (size_t j = 0; j < std::min(point.t.size(), q); ++j) {
    const int m = schema.num_levels(static_cast<int>(j));
    if (point.t[j] < 1 || point.t[j] > m) {
      out.push_back({"factor " + std::to_string(j + 1) + " level out of range: " +
                     std::to_string(point.t[j]) + " not in 1.." + std::to_string(m)});
    }
  }
  return out;
}

bool is_valid(const MixedPoint& point, const InputSchema& schema) {
  return validate(point, schema).empty();
}

void require_valid(const MixedPoint& point, const InputSchema& schema) {
  const auto violations = validate(point, schema);
  if (violations.empty()) return;
  std::string msg = "invalid point:";
  for (const auto& v : violations) msg += " " + v.message + ";";
  throw ValidationError(msg);
}

MixedPoint normalize(const MixedPoint& point, const InputSchema& schema) {
  require_valid(point, schema);
  MixedPoint out = point;
  for (int i = 0; i < schema.num_quant(); ++i) {
    const auto& in = schema.quant(i);
    out.x[static_cast<size_t>(i)] = (point.x[static_cast<size_t>(i)] - in.lower) / (in.upper - in.lower);
  }
  return out;
}

MixedPoint denormalize(const MixedPoint& point, const InputSchema& schema) {
  MixedPoint out = point;
  for (int i = 0; i < schema.num_quant(); ++i) {
    const auto& in = schema.quant(i);
    out.x[static_cast<size_t>(i)] = in.lower + point.x[static_cast<size_t>(i)] * (in.upper - in.lower);
  }
  require_valid(out, schema);
  return out;
}

Dataset::Dataset(InputSchema schema, std::vector<MixedPoint> points, std::vector<double> y)
    : schema_(std::move(schema)), points_(std::move(points)), y_(std::move(y)) {
  if (points_.size() != y_.size()) {
    throw ValidationError("dataset: points and responses differ in length");
  }
  if (y_.empty()) {
    throw ValidationError("dataset: needs at least one observation");
  }
  for (size_t i = 0; i < points_.size(); ++i) {
    const auto violations = validate(points_[i], schema_);
    if (!violations.empty()) {
      throw ValidationError("dataset: point " + std::to_string(i + 1) + " invalid: " +
                            violations.front().message);
    }
  }
}

PackedDataset pack_dataset(const Dataset& data) {
  const int n = data.size();
  const int p = data.schema().num_quant();
  const int q = data.schema().num_qual();
  PackedDataset packed;
  packed.x.resize(n, p);
  packed.levels.resize(n, q);
  packed.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const MixedPoint norm = normalize(data.point(i), data.schema());
    for (int c = 0; c < p; ++c) packed.x(i, c) = norm.x[static_cast<size_t>(c)];
    for (int j = 0; j < q; ++j) packed.levels(i, j) = norm.t[static_cast<size_t>(j)] - 1;
    packed.y(i) = data.y(i);
  }
  return packed;
}

Dataset unpack_dataset(const InputSchema& schema, const PackedDataset& packed) {
  const int n = static_cast<int>(packed.y.size());
  std::vector<MixedPoint> points;
  points.reserve(static_cast<size_t>(n));
  std::vector<double> y(packed.y.data(), packed.y.data() + n);
  for (int i = 0; i < n; ++i) {
    MixedPoint w;
    w.x.resize(static_cast<size_t>(schema.num_quant()));
    w.t.resize(static_cast<size_t>(schema.num_qual()));
    for (int c = 0; c < schema.num_quant(); ++c) w.x[static_cast<size_t>(c)] = packed.x(i, c);
    for (int j = 0; j < schema.num_qual(); ++j) w.t[static_cast<size_t>(j)] = packed.levels(i, j) + 1;
    points.push_back(denormalize(w, schema));
  }
  return Dataset(schema, std::move(points), std::move(y));
}

}  // namespace lvgp

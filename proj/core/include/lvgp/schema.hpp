#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "lvgp/errors.hpp"

namespace lvgp {

struct QuantInput {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;

  bool operator==(const QuantInput&) const = default;
};

struct QualFactor {
  std::string name;
  std::vector<std::string> labels;  // one per level, unique within the factor

  int num_levels() const { return static_cast<int>(labels.size()); }
  bool operator==(const QualFactor&) const = default;
};

// Declares the p quantitative inputs (with native ranges) and the q
// qualitative factors (with their levels).  Shared vocabulary of every
// module: datasets, kernels, designs, and problems all validate against it.
class InputSchema {
 public:
  InputSchema() = default;
  InputSchema(std::vector<QuantInput> quant, std::vector<QualFactor> qual);

  int num_quant() const { return static_cast<int>(quant_.size()); }
  int num_qual() const { return static_cast<int>(qual_.size()); }
  const QuantInput& quant(int i) const { return quant_[static_cast<size_t>(i)]; }
  const QualFactor& qual(int j) const { return qual_[static_cast<size_t>(j)]; }
  int num_levels(int j) const { return qual_[static_cast<size_t>(j)].num_levels(); }
  const std::vector<QuantInput>& quant_inputs() const { return quant_; }
  const std::vector<QualFactor>& qual_factors() const { return qual_; }

  // Same factors, quantitative ranges replaced by [0,1].
  InputSchema unit_cube() const;

  bool operator==(const InputSchema&) const = default;

 private:
  std::vector<QuantInput> quant_;
  std::vector<QualFactor> qual_;
};

// An input w = (x, t).  Level indices are 1-based, matching t = 1..m.
struct MixedPoint {
  std::vector<double> x;
  std::vector<int> t;
};

struct Violation {
  std::string message;
};

// Returns every violated bound/level constraint; empty means valid.
std::vector<Violation> validate(const MixedPoint& point, const InputSchema& schema);
bool is_valid(const MixedPoint& point, const InputSchema& schema);
// Throws ValidationError listing all violations if the point is invalid.
void require_valid(const MixedPoint& point, const InputSchema& schema);

// Affine map of x onto [0,1]^p; levels unchanged.  Inverse of denormalize.
MixedPoint normalize(const MixedPoint& point, const InputSchema& schema);
MixedPoint denormalize(const MixedPoint& point, const InputSchema& schema);

// n observed (w, y) pairs under one schema.  Immutable after construction.
class Dataset {
 public:
  Dataset(InputSchema schema, std::vector<MixedPoint> points, std::vector<double> y);

  const InputSchema& schema() const { return schema_; }
  int size() const { return static_cast<int>(y_.size()); }
  const MixedPoint& point(int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<MixedPoint>& points() const { return points_; }
  double y(int i) const { return y_[static_cast<size_t>(i)]; }
  const std::vector<double>& responses() const { return y_; }

 private:
  InputSchema schema_;
  std::vector<MixedPoint> points_;
  std::vector<double> y_;
};

// Dense, normalized view of a dataset used by the numeric code paths:
// x rows in [0,1]^p, levels 0-based.
struct PackedDataset {
  Eigen::MatrixXd x;       // n x p
  Eigen::MatrixXi levels;  // n x q, 0-based
  Eigen::VectorXd y;
};

PackedDataset pack_dataset(const Dataset& data);

// Rebuilds a Dataset (native units, 1-based levels) from its packed form.
Dataset unpack_dataset(const InputSchema& schema, const PackedDataset& packed);

}  // namespace lvgp

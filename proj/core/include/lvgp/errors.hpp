#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace lvgp {

// Invalid schema, point, or dataset.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Correlation matrix could not be factorized even at the jitter cap.
// Carries the offending packed parameter vector for diagnosis.
class SingularCorrelationError : public std::runtime_error {
 public:
  SingularCorrelationError(std::string what, Eigen::VectorXd params)
      : std::runtime_error(std::move(what)), params_(std::move(params)) {}

  const Eigen::VectorXd& params() const { return params_; }

 private:
  Eigen::VectorXd params_;
};

// Response vector carries no information (zero variance).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every optimization start failed.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation requires a kernel family the model was not fit with.
class UnsupportedKernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lvgp

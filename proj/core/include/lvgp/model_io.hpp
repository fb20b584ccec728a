#pragma once

#include <string>

#include "lvgp/fit.hpp"

namespace lvgp {

// Model persistence: a JSON document holding the schema, kernel config,
// packed parameter vector, profiled moments, jitter, achieved nll,
// diagnostics, and the normalized training data.  Doubles are written with
// round-trip precision; the factorization and prediction weights are rebuilt
// on load, so a reloaded model predicts bit-identically.
void save_model(const FittedModel& model, const std::string& path);
FittedModel load_model(const std::string& path);

}  // namespace lvgp

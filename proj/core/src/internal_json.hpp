#pragma once

#include <json.hpp>

#include "lvgp/kernels.hpp"
#include "lvgp/schema.hpp"

namespace lvgp::detail {

nlohmann::json schema_to_json(const InputSchema& schema);
InputSchema schema_from_json(const nlohmann::json& j);

nlohmann::json kernel_config_to_json(const KernelConfig& config);
KernelConfig kernel_config_from_json(const nlohmann::json& j);

}  // namespace lvgp::detail

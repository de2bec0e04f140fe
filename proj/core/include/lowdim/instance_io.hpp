#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "lowdim/instances.hpp"

namespace lowdim::instances {

/// {params, S_sets (1-based index lists), points: {O, E, Y}}.
nlohmann::json to_json(const HardInstance& inst);

/// Rebuilds the instance from params and S_sets. When points are present
/// they must agree with the rebuilt coordinates to 1e-12 (ParseError).
HardInstance instance_from_json(const nlohmann::json& j);

void write_instance_json(const std::filesystem::path& path, const HardInstance& inst);
HardInstance read_instance_json(const std::filesystem::path& path);

}  // namespace lowdim::instances

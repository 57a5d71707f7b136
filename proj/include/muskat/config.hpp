#pragma once

#include "muskat/evolution.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace muskat {

inline constexpr int kConfigSchema = 1;

// Strict parsing: "schema" must equal 1 and unknown keys are rejected.
// Every failure is reported as InvalidArgument.
SimConfig parse_config(const nlohmann::json& j);
SimConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const SimConfig& config);

nlohmann::json params_to_json(const FluidParams& p);
nlohmann::json rt_to_json(const RTReport& r);

// Run metadata: termination reason, times, step sizes and the RT margin series.
nlohmann::json trajectory_metadata(const Trajectory& traj, const SimConfig& config);

// One CSV file per stored snapshot (x, f, h) plus metadata.json.
void write_trajectory(const Trajectory& traj, const SimConfig& config, const std::filesystem::path& out_dir);

}  // namespace muskat

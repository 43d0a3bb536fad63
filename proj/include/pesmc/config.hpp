#pragma once

// JSON run configuration, scenario presets and trace serialization.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pesmc/sim_config.hpp"
#include "pesmc/trace.hpp"

namespace pesmc {

inline constexpr std::string_view kTraceHeader = "t,s,omega,d,norm_u_l2,norm_v_l2,norm_u_h1";
inline constexpr std::string_view kSnapshotHeader = "x,u,v";
inline constexpr std::string_view kRemainderHeader = "t,remainder";

const std::vector<std::string>& scenario_names();

/// Preset document for a named scenario. Throws Validation for unknown names
/// and for "custom", which has no preset.
nlohmann::json scenario_preset(std::string_view name);

/// Expands "scenario" (default "custom"), merge-patches the remaining keys on
/// top of the preset, and converts. Unknown keys and wrongly typed values throw
/// Parse naming the key; invariant violations throw Validation.
SimConfig resolve_config(const nlohmann::json& doc);

/// Parse text (Parse errors carry line and column) then resolve.
SimConfig parse_config_text(std::string_view text);
SimConfig parse_config_file(const std::filesystem::path& path);

/// Full resolved config, readable back through resolve_config.
nlohmann::json to_json(const SimConfig& cfg);

struct TracePaths {
  std::filesystem::path trace;
  std::filesystem::path metadata;
  std::filesystem::path remainder;
  std::filesystem::path snapshot(std::size_t index) const;
};

/// trace.csv -> trace.meta.json, trace.remainder.csv, trace.snap0000.csv, ...
TracePaths trace_paths(const std::filesystem::path& trace);

/// Writes the trace CSV (12 significant digits), the remainder companion for
/// closed-loop runs, one "x,u,v" file per snapshot, and the JSON metadata.
void write_trace(const SimTrace& trace, const std::filesystem::path& path);

/// Reads back the trace CSV, metadata and remainder companion. Snapshots are
/// not loaded.
SimTrace read_trace(const std::filesystem::path& path);

}  // namespace pesmc

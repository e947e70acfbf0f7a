#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "hoqc/cli/config.hpp"
#include "hoqc/cli/script.hpp"

// Subcommand bodies. Each writes its artifacts under cfg.output_dir and a
// short human-readable summary to `log`.

namespace hoqc::cli {

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> dim;
  std::optional<std::filesystem::path> script;
};

/// Loads the config (or the defaults) and applies flag overrides.
RunConfig resolve_config(const CommandOptions& options);

/// Writes scaling_report.json.
nlohmann::json cmd_scaling(const RunConfig& cfg, std::ostream& log);

/// Writes register_map.csv, g_factors.csv, splittings.csv,
/// selectivity_vs_B.csv and transitions.csv.
void cmd_structure(const RunConfig& cfg, std::ostream& log);

/// Writes trap_spectrum.csv.
TrapSpectrum cmd_trap(const RunConfig& cfg, std::ostream& log);

/// Writes register_trace.jsonl and register_report.json.
nlohmann::json cmd_register(const RunConfig& cfg, const std::filesystem::path& script,
                            std::ostream& log);

/// Writes loading_stats.json and k_histogram.csv.
LoadingStats cmd_loading(const RunConfig& cfg, std::ostream& log);

}  // namespace hoqc::cli

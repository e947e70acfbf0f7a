#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hoqc/loading.hpp"
#include "hoqc/scaling.hpp"
#include "hoqc/schedule.hpp"
#include "hoqc/structure.hpp"
#include "hoqc/trap.hpp"

// Run configuration: a JSON tree whose keys carry their units
// ("tau0_ns", "site_pitch_um", ...). Every key is optional and defaults to
// the reference parameter set; unknown keys and wrong types are rejected.

namespace hoqc::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StructureSweep {
  double field_max_g = 100.0;
  double field_step_g = 5.0;
  double field_g = 50.0;  // field used for the register map table
};

struct TrapScan {
  BeamParams beam{};
  double scan_min_cm1 = 23000.0;
  double scan_max_cm1 = 27500.0;
  double scan_step_cm1 = 10.0;
  double min_detuning_cm1 = 1.0;
};

struct RegisterRunConfig {
  ScheduleTiming timing{};
  double phase_error_target = 1e-3;
  std::uint64_t seed = 1;
};

struct RunConfig {
  ScalingParams scaling{};
  EnsembleParams ensemble{};
  HyperfineConfig hyperfine{};
  StructureSweep structure{};
  TrapScan trap{};
  std::filesystem::path level_table_path;  // empty: bundled table
  RegisterRunConfig reg{};
  LoadingConfig loading{};
  std::filesystem::path output_dir = "out";

  /// Cross-field checks; throws ConfigError naming the field.
  void validate() const;
};

std::filesystem::path default_level_table();

/// Relative input paths resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::filesystem::path& base_dir = {});

/// Throws ConfigError naming the path when it is missing or not JSON.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace hoqc::cli

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hoqc/register.hpp"

// Register scripts: one operation per line or `;`-separated, `#` comments.
//
//   init N [budget=K]
//   rot I THETA PHI            angles as numbers or pi multiples: pi/2, 3pi/4, -pi
//   measure I [seed=S]
//   reset_swap I [relabel=preserve|append]
//   reset_restore I

namespace hoqc::cli {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class OpKind { kInit, kRotate, kMeasure, kResetSwap, kResetRestore };

struct ScriptOp {
  OpKind kind = OpKind::kInit;
  int line = 0;
  int bit = 0;  // qubit count for init, logical bit otherwise
  std::optional<long> budget;
  double theta = 0.0;
  double phi = 0.0;
  std::optional<std::uint64_t> seed;
  RelabelPolicy relabel = RelabelPolicy::kPreserveLogical;
  std::string text;
};

/// Throws std::invalid_argument for malformed angles.
double parse_angle(std::string_view token);

std::vector<ScriptOp> parse_script(std::string_view text);

struct ScriptRun {
  std::vector<nlohmann::json> trace;  // one record per operation
  std::optional<RegisterState> final_state;
};

struct ScriptContext {
  ScheduleTiming timing{};
  double phase_error_target = 1e-3;
  std::uint64_t seed = 1;   // measurements without seed= draw from stream k of this seed
  long default_budget = 100;
};

/// Operation failures are rethrown as ScriptError carrying the line.
ScriptRun run_script(const std::vector<ScriptOp>& ops, const ScriptContext& ctx);

nlohmann::json schedule_to_json(const PulseSchedule& schedule);
nlohmann::json budget_to_json(const ErrorBudget& budget);
nlohmann::json state_summary(const RegisterState& state);

}  // namespace hoqc::cli

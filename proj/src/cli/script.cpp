#include "hoqc/cli/script.hpp"

#include <charconv>
#include <regex>
#include <sstream>

#include "hoqc/constants.hpp"

namespace hoqc::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
bool parse_int(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ScriptOp parse_op(std::string_view text, int line) {
  const std::vector<std::string> tok = split_ws(text);
  ScriptOp op;
  op.line = line;
  op.text = std::string(text);
  const std::string& verb = tok.front();

  auto bit_arg = [&](std::size_t at) {
    int v = 0;
    if (tok.size() <= at || !parse_int(tok[at], v)) {
      throw ScriptError(line, verb + ": expected an integer bit index");
    }
    return v;
  };
  // key=value options after the positional arguments.
  auto options = [&](std::size_t from, auto&& handle) {
    for (std::size_t k = from; k < tok.size(); ++k) {
      const auto eq = tok[k].find('=');
      if (eq == std::string::npos) throw ScriptError(line, verb + ": unexpected token '" + tok[k] + "'");
      handle(tok[k].substr(0, eq), tok[k].substr(eq + 1));
    }
  };

  if (verb == "init") {
    op.kind = OpKind::kInit;
    op.bit = bit_arg(1);
    options(2, [&](const std::string& key, const std::string& value) {
      long b = 0;
      if (key != "budget" || !parse_int(value, b)) {
        throw ScriptError(line, "init: expected budget=<integer>, got '" + key + "=" + value + "'");
      }
      op.budget = b;
    });
  } else if (verb == "rot") {
    op.kind = OpKind::kRotate;
    op.bit = bit_arg(1);
    if (tok.size() != 4) throw ScriptError(line, "rot: expected 'rot I THETA PHI'");
    try {
      op.theta = parse_angle(tok[2]);
      op.phi = parse_angle(tok[3]);
    } catch (const std::invalid_argument& e) {
      throw ScriptError(line, e.what());
    }
  } else if (verb == "measure") {
    op.kind = OpKind::kMeasure;
    op.bit = bit_arg(1);
    options(2, [&](const std::string& key, const std::string& value) {
      std::uint64_t s = 0;
      if (key != "seed" || !parse_int(value, s)) {
        throw ScriptError(line, "measure: expected seed=<non-negative integer>");
      }
      op.seed = s;
    });
  } else if (verb == "reset_swap") {
    op.kind = OpKind::kResetSwap;
    op.bit = bit_arg(1);
    options(2, [&](const std::string& key, const std::string& value) {
      if (key == "relabel" && value == "preserve") {
        op.relabel = RelabelPolicy::kPreserveLogical;
      } else if (key == "relabel" && value == "append") {
        op.relabel = RelabelPolicy::kAppend;
      } else {
        throw ScriptError(line, "reset_swap: expected relabel=preserve|append");
      }
    });
  } else if (verb == "reset_restore") {
    op.kind = OpKind::kResetRestore;
    op.bit = bit_arg(1);
    if (tok.size() != 2) throw ScriptError(line, "reset_restore: expected 'reset_restore I'");
  } else {
    throw ScriptError(line, "unknown operation '" + verb + "'");
  }
  return op;
}

std::string_view kind_name(OpKind k) {
  switch (k) {
    case OpKind::kInit: return "init";
    case OpKind::kRotate: return "rot";
    case OpKind::kMeasure: return "measure";
    case OpKind::kResetSwap: return "reset_swap";
    case OpKind::kResetRestore: return "reset_restore";
  }
  return "?";
}

json sublevel_json(const Sublevel& s) {
  return {{"multiplet", s.multiplet == Multiplet::kGround ? "J15/2" : "J11/2"},
          {"F", s.f},
          {"m", s.m}};
}

}  // namespace

ScriptError::ScriptError(int line, const std::string& what)
    : std::runtime_error("script line " + std::to_string(line) + ": " + what), line_(line) {}

double parse_angle(std::string_view token) {
  static const std::regex pi_form(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\*?pi(?:/(\d+\.?\d*))?$)");
  const std::string s(token);
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    double v = constants::kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double d = std::stod(m[3].str());
      if (d == 0.0) throw std::invalid_argument("angle '" + s + "': division by zero");
      v /= d;
    }
    return m[1].str() == "-" ? -v : v;
  }
  static const std::regex plain(R"(^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$)");
  if (std::regex_match(s, plain)) return std::stod(s);
  throw std::invalid_argument("malformed angle '" + s + "'");
}

std::vector<ScriptOp> parse_script(std::string_view text) {
  std::vector<ScriptOp> ops;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view row = text.substr(pos, nl - pos);
    ++line;
    pos = nl + 1;
    if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::size_t start = 0;
    while (start <= row.size()) {
      const std::size_t semi = std::min(row.find(';', start), row.size());
      const std::string_view piece = trim(row.substr(start, semi - start));
      if (!piece.empty()) ops.push_back(parse_op(piece, line));
      start = semi + 1;
    }
  }
  return ops;
}

json schedule_to_json(const PulseSchedule& schedule) {
  json steps = json::array();
  for (const PulseStep& s : schedule.steps) {
    json j{{"kind", std::string(to_string(s.kind))},
           {"source", sublevel_json(s.source)},
           {"target", sublevel_json(s.target)},
           {"duration_s", s.duration_s},
           {"bit", s.bit},
           {"note", s.note}};
    j["frequency_Hz"] = s.frequency_hz ? json(*s.frequency_hz) : json(nullptr);
    steps.push_back(std::move(j));
  }
  return {{"register_size", schedule.register_size}, {"steps", std::move(steps)}};
}

json budget_to_json(const ErrorBudget& budget) {
  json steps = json::array();
  for (const StepBudget& s : budget.steps) {
    steps.push_back({{"step", s.step},
                     {"kind", std::string(to_string(s.kind))},
                     {"spectator_detuning_Hz",
                      s.spectator_detuning_hz ? json(*s.spectator_detuning_hz) : json(nullptr)},
                     {"spectator_error", s.spectator_error},
                     {"differential_shift_Hz", s.differential_shift_hz},
                     {"dephasing_cycles", s.dephasing_cycles},
                     {"field_stability_requirement", s.stability_requirement}});
  }
  return {{"steps", std::move(steps)},
          {"total_spectator_error", budget.total_spectator_error},
          {"worst_spectator_error", budget.worst_spectator_error},
          {"total_dephasing_cycles", budget.total_dephasing_cycles},
          {"field_stability_requirement", budget.stability_requirement}};
}

json state_summary(const RegisterState& state) {
  json p1 = json::array();
  for (int k = 1; k <= state.n_qubits; ++k) p1.push_back(probability_one(state, k));
  json out{{"n_qubits", state.n_qubits},
           {"atom_budget", state.atom_budget},
           {"reinitializations", state.reinitializations},
           {"relabel", state.relabel},
           {"p_one", std::move(p1)},
           {"norm", state.amplitudes.norm()}};
  out["shelf"] = state.shelf ? json{{"bit", state.shelf->logical}, {"slot", state.shelf->slot}}
                             : json(nullptr);
  if (state.n_qubits <= 10) {
    json amps = json::array();
    const auto logical = logical_amplitudes(state);
    for (Eigen::Index i = 0; i < logical.size(); ++i) {
      amps.push_back({logical(i).real(), logical(i).imag()});
    }
    out["logical_amplitudes"] = std::move(amps);
  }
  return out;
}

ScriptRun run_script(const std::vector<ScriptOp>& ops, const ScriptContext& ctx) {
  ScriptRun run;
  std::uint64_t draws = 0;
  for (const ScriptOp& op : ops) {
    json rec{{"line", op.line}, {"op", std::string(kind_name(op.kind))}};
    try {
      if (op.kind != OpKind::kInit && !run.final_state) {
        throw std::logic_error("register not initialized; start with 'init N'");
      }
      switch (op.kind) {
        case OpKind::kInit: {
          const long budget = op.budget.value_or(ctx.default_budget);
          run.final_state = new_register(op.bit, budget);
          const PulseSchedule sched = init_schedule(canonical_register_map(), op.bit, ctx.timing);
          rec["n_qubits"] = op.bit;
          rec["atom_budget"] = budget;
          rec["schedule"] = schedule_to_json(sched);
          rec["error_budget"] =
              budget_to_json(error_budget(sched, ctx.timing.hyperfine, ctx.timing.field,
                                          ctx.timing.rabi, ctx.phase_error_target));
          break;
        }
        case OpKind::kRotate: {
          run.final_state = apply_rotation(*run.final_state, op.bit, op.theta, op.phi);
          const PulseSchedule sched = rotation_schedule(canonical_register_map(),
                                                        run.final_state->n_qubits,
                                                        run.final_state->slot_of(op.bit), ctx.timing);
          rec["bit"] = op.bit;
          rec["theta_rad"] = op.theta;
          rec["phi_rad"] = op.phi;
          rec["schedule"] = schedule_to_json(sched);
          rec["error_budget"] =
              budget_to_json(error_budget(sched, ctx.timing.hyperfine, ctx.timing.field,
                                          ctx.timing.rabi, ctx.phase_error_target));
          break;
        }
        case OpKind::kMeasure: {
          const std::uint64_t seed = op.seed.value_or(rng::derive_seed(ctx.seed, draws++));
          const double p1 = probability_one(*run.final_state, op.bit);
          const int slot = run.final_state->slot_of(op.bit);
          auto result = measure(*run.final_state, op.bit, seed);
          run.final_state = std::move(result.state);
          rec["bit"] = op.bit;
          rec["seed"] = seed;
          rec["p_one"] = p1;
          rec["outcome"] = result.outcome;
          rec["schedule"] = schedule_to_json(measurement_schedule(
              canonical_register_map(), run.final_state->n_qubits, slot, ctx.timing));
          break;
        }
        case OpKind::kResetSwap:
        case OpKind::kResetRestore: {
          auto result = op.kind == OpKind::kResetSwap
                            ? reset_swap_down(*run.final_state, op.bit, op.relabel, ctx.timing)
                            : reset_shelf_restore(*run.final_state, op.bit, ctx.timing);
          run.final_state = std::move(result.state);
          rec["bit"] = op.bit;
          if (op.kind == OpKind::kResetSwap) {
            rec["relabel_policy"] =
                op.relabel == RelabelPolicy::kPreserveLogical ? "preserve" : "append";
          }
          rec["schedule"] = schedule_to_json(result.schedule);
          rec["error_budget"] =
              budget_to_json(error_budget(result.schedule, ctx.timing.hyperfine,
                                          ctx.timing.field, ctx.timing.rabi,
                                          ctx.phase_error_target));
          break;
        }
      }
    } catch (const ScriptError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScriptError(op.line, std::string(kind_name(op.kind)) + ": " + e.what());
    }
    rec["state"] = state_summary(*run.final_state);
    run.trace.push_back(std::move(rec));
  }
  return run;
}

}  // namespace hoqc::cli

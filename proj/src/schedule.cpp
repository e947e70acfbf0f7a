#include "hoqc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <queue>
#include <sstream>

#include "hoqc/constants.hpp"

namespace hoqc {

namespace {

bool is_transfer(StepKind kind) {
  return kind != StepKind::kFluoresce;
}

double mhz_to_hz(double mhz) { return mhz * 1e6; }

double pi_pulse_time(const ScheduleTiming& t) {
  const double rabi_hz = t.rabi.in(Unit::kHertz);
  if (!(rabi_hz > 0.0)) throw std::invalid_argument("schedule: Rabi frequency must be positive");
  return 1.0 / (2.0 * rabi_hz);
}

double blockade_pulse_time(const ScheduleTiming& t) {
  if (t.atoms < 1) throw std::invalid_argument("schedule: atom number must be positive");
  return pi_pulse_time(t) / std::sqrt(static_cast<double>(t.atoms));
}

// Net frequency of a ground-to-ground transfer at the schedule's field.
std::optional<double> transfer_frequency(const Sublevel& a, const Sublevel& b,
                                         const ScheduleTiming& t) {
  if (a.multiplet != Multiplet::kGround || b.multiplet != Multiplet::kGround) {
    return std::nullopt;
  }
  const HyperfineConfig& cfg = t.hyperfine;
  const double hf = hyperfine_energy(cfg, b.f).value - hyperfine_energy(cfg, a.f).value;
  const double z = zeeman_shift(cfg, {b.f, b.m}, t.field).value -
                   zeeman_shift(cfg, {a.f, a.m}, t.field).value;
  return mhz_to_hz(hf + z);
}

PulseStep make_step(StepKind kind, const Sublevel& from, const Sublevel& to, double duration,
                    int bit, const ScheduleTiming& t, std::string note = {}) {
  return {kind, from, to, duration, transfer_frequency(from, to, t), bit, std::move(note)};
}

void append_walk(PulseSchedule& schedule, const std::vector<Sublevel>& path, int bit,
                 const ScheduleTiming& t, const std::string& note) {
  for (std::size_t k = 1; k < path.size(); ++k) {
    schedule.steps.push_back(make_step(StepKind::kRamanTransfer, path[k - 1], path[k],
                                       pi_pulse_time(t), bit, t, note));
  }
}

void require_slot(const RegisterMap& map, int register_size, int slot) {
  if (register_size < 1 || register_size > map.size()) {
    throw std::out_of_range("schedule: register size outside 1.." + std::to_string(map.size()));
  }
  if (slot < 1 || slot > register_size) {
    throw std::out_of_range("schedule: slot " + std::to_string(slot) + " outside 1.." +
                            std::to_string(register_size));
  }
}

// Occupied ground sublevels of bits 1..n other than those listed in `skip`.
std::set<Sublevel> occupied(const RegisterMap& map, int n, std::initializer_list<int> skip) {
  std::set<Sublevel> out{ground(map.reservoir)};
  for (int b = 1; b <= n; ++b) {
    if (std::find(skip.begin(), skip.end(), b) != skip.end()) continue;
    out.insert(ground(map.qubit(b).zero));
    out.insert(ground(map.qubit(b).one));
  }
  return out;
}

const Sublevel kShelfEntry = metastable(9, 9);

// Shelved atom: optically pump to |J=11/2, 9, 9>, then s1/s2 back to |s>.
void append_return_to_reservoir(PulseSchedule& schedule, const RegisterMap& map, int slot,
                                const ScheduleTiming& t) {
  const Sublevel parked = shelf_partner(map.qubit(slot).one);
  if (parked != kShelfEntry) {
    schedule.steps.push_back(make_step(StepKind::kRestore, parked, kShelfEntry,
                                       t.pump_time.in(Unit::kSecond), slot, t,
                                       "sigma+ optical pumping on r1"));
  }
  schedule.steps.push_back(make_step(StepKind::kRestore, kShelfEntry, ground(map.reservoir),
                                     pi_pulse_time(t), slot, t,
                                     "coherent s1/s2 transfer to reservoir"));
}

}  // namespace

std::string to_string(const Sublevel& s) {
  std::ostringstream os;
  os << (s.multiplet == Multiplet::kGround ? "J=15/2" : "J=11/2") << " |" << s.f << ','
     << s.m << '>';
  return os.str();
}

int multiplet_f_min(Multiplet m) { return m == Multiplet::kGround ? 4 : 2; }
int multiplet_f_max(Multiplet m) { return m == Multiplet::kGround ? 11 : 9; }

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kBlockadePrep: return "blockade_prep";
    case StepKind::kRamanTransfer: return "raman_transfer";
    case StepKind::kRotation: return "rotation";
    case StepKind::kShelve: return "shelve";
    case StepKind::kFluoresce: return "fluoresce";
    case StepKind::kRestore: return "restore";
  }
  return "unknown";
}

void PulseSchedule::validate() const {
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const PulseStep& s = steps[k];
    if (!(s.duration_s > 0.0)) {
      throw std::invalid_argument("schedule step " + std::to_string(k) + ": duration must be positive");
    }
    if (is_transfer(s.kind) && s.source == s.target) {
      throw std::invalid_argument("schedule step " + std::to_string(k) + ": source equals target");
    }
  }
}

void PulseSchedule::append(const PulseSchedule& other) {
  register_size = std::max(register_size, other.register_size);
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

std::size_t PulseSchedule::count(StepKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(), [kind](const PulseStep& s) { return s.kind == kind; }));
}

bool raman_hop_allowed(const Sublevel& from, const Sublevel& to, const HopRule& rule) {
  if (from.multiplet != to.multiplet) return false;
  const int df = std::abs(to.f - from.f);
  const int dm = std::abs(to.m - from.m);
  if (df > rule.max_df || dm > rule.max_dm) return false;
  if (df == 0 && !rule.allow_zero_df) return false;
  return from != to;
}

std::vector<Sublevel> raman_route(const Sublevel& from, const Sublevel& to,
                                  const std::set<Sublevel>& blocked, const HopRule& rule) {
  if (from.multiplet != to.multiplet) {
    throw RouteError("raman_route: end points lie in different multiplets");
  }
  const Multiplet mult = from.multiplet;
  const int f_lo = multiplet_f_min(mult);
  const int f_hi = multiplet_f_max(mult);
  auto valid = [&](const Sublevel& s) {
    return s.f >= f_lo && s.f <= f_hi && std::abs(s.m) <= s.f;
  };
  if (!valid(from) || !valid(to)) throw RouteError("raman_route: invalid end point");
  if (from == to) return {from};

  std::map<Sublevel, Sublevel> parent;
  std::queue<Sublevel> frontier;
  frontier.push(from);
  parent.emplace(from, from);
  while (!frontier.empty()) {
    const Sublevel cur = frontier.front();
    frontier.pop();
    for (int df = -rule.max_df; df <= rule.max_df; ++df) {
      for (int dm = -rule.max_dm; dm <= rule.max_dm; ++dm) {
        const Sublevel next{mult, cur.f + df, cur.m + dm};
        if (!valid(next) || !raman_hop_allowed(cur, next, rule)) continue;
        if (parent.count(next) != 0) continue;
        if (next != to && blocked.count(next) != 0) continue;
        parent.emplace(next, cur);
        if (next == to) {
          std::vector<Sublevel> path{to};
          for (Sublevel s = to; s != from;) {
            s = parent.at(s);
            path.push_back(s);
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        frontier.push(next);
      }
    }
  }
  throw RouteError("raman_route: " + to_string(to) + " unreachable from " + to_string(from));
}

const RegisterMap& canonical_register_map() {
  static const RegisterMap map = build_register_map();
  return map;
}

Sublevel shelf_partner(HyperfineState s) {
  const int f = std::clamp(s.f, multiplet_f_min(Multiplet::kMetastable),
                           multiplet_f_max(Multiplet::kMetastable));
  return metastable(f, std::clamp(s.m, -f, f));
}

PulseSchedule init_schedule(const RegisterMap& map, int n_qubits, const ScheduleTiming& t) {
  if (n_qubits < 1 || n_qubits > map.size()) {
    throw std::out_of_range("init_schedule: n_qubits outside 1.." + std::to_string(map.size()));
  }
  const Sublevel entry = ground(map.qubit(map.size()).zero);  // |0_60> = |10,10>
  PulseSchedule schedule;
  schedule.register_size = n_qubits;
  std::set<Sublevel> blocked{ground(map.reservoir)};
  for (int b = 1; b <= n_qubits; ++b) {
    const Sublevel target = ground(map.qubit(b).zero);
    schedule.steps.push_back(make_step(StepKind::kBlockadePrep, ground(map.reservoir), entry,
                                       blockade_pulse_time(t), b, t,
                                       "Rydberg blockade: single collective excitation"));
    append_walk(schedule, raman_route(entry, target, blocked), b, t, "Raman via transition e");
    blocked.insert(target);
  }
  return schedule;
}

PulseSchedule rotation_schedule(const RegisterMap& map, int register_size, int slot,
                                const ScheduleTiming& t) {
  require_slot(map, register_size, slot);
  PulseSchedule schedule;
  schedule.register_size = register_size;
  const QubitAssignment& q = map.qubit(slot);
  schedule.steps.push_back(make_step(StepKind::kRotation, ground(q.zero), ground(q.one),
                                     pi_pulse_time(t), slot, t, "Raman near transition e"));
  return schedule;
}

PulseSchedule measurement_schedule(const RegisterMap& map, int register_size, int slot,
                                   const ScheduleTiming& t) {
  require_slot(map, register_size, slot);
  PulseSchedule schedule;
  schedule.register_size = register_size;
  const QubitAssignment& q = map.qubit(slot);
  const Sublevel parked = shelf_partner(q.one);
  schedule.steps.push_back(make_step(StepKind::kShelve, ground(q.one), parked, pi_pulse_time(t),
                                     slot, t, "s1/s2 Raman to J=11/2"));
  schedule.steps.push_back(make_step(StepKind::kFluoresce, parked, parked,
                                     t.readout_time.in(Unit::kSecond), slot, t,
                                     "r1 fluorescence, r2/r3 repumping"));
  return schedule;
}

PulseSchedule swap_down_schedule(const RegisterMap& map, int register_size, int hole,
                                 const ScheduleTiming& t) {
  require_slot(map, register_size, hole);
  PulseSchedule schedule;
  schedule.register_size = register_size;
  append_return_to_reservoir(schedule, map, hole, t);

  for (int j = hole + 1; j <= register_size; ++j) {
    const QubitAssignment& from = map.qubit(j);
    const QubitAssignment& to = map.qubit(j - 1);
    std::set<Sublevel> blocked = occupied(map, register_size, {j, j - 1});
    blocked.insert(ground(from.zero));
    append_walk(schedule, raman_route(ground(from.one), ground(to.one), blocked), j,
                t, "swap |1> down one slot");
    blocked.erase(ground(from.zero));
    blocked.insert(ground(to.one));
    append_walk(schedule, raman_route(ground(from.zero), ground(to.zero), blocked), j,
                t, "swap |0> down one slot");
  }

  const Sublevel entry = ground(map.qubit(map.size()).zero);
  const Sublevel top = ground(map.qubit(register_size).zero);
  std::set<Sublevel> blocked = occupied(map, register_size, {register_size});
  schedule.steps.push_back(make_step(StepKind::kBlockadePrep, ground(map.reservoir), entry,
                                     blockade_pulse_time(t), register_size, t,
                                     "reinitialize top bit from reservoir"));
  append_walk(schedule, raman_route(entry, top, blocked), register_size, t,
              "Raman via transition e");
  return schedule;
}

PulseSchedule shelf_restore_schedule(const RegisterMap& map, int register_size, int slot,
                                     const ScheduleTiming& t) {
  require_slot(map, register_size, slot);
  PulseSchedule schedule;
  schedule.register_size = register_size;
  append_return_to_reservoir(schedule, map, slot, t);

  const HyperfineState zero = map.qubit(slot).zero;
  const Sublevel partner = shelf_partner(zero);
  schedule.steps.push_back(make_step(StepKind::kBlockadePrep, ground(map.reservoir),
                                     kShelfEntry, blockade_pulse_time(t), slot, t,
                                     "blockade from reservoir into J=11/2"));
  append_walk(schedule, raman_route(kShelfEntry, partner), slot, t, "Raman inside J=11/2");
  schedule.steps.push_back(make_step(StepKind::kRestore, partner, ground(zero),
                                     pi_pulse_time(t), slot, t, "s1/s2 Raman back to |0_i>"));
  validate_route(schedule);
  return schedule;
}

void validate_route(const PulseSchedule& schedule) {
  schedule.validate();
  for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
    const PulseStep& s = schedule.steps[k];
    if (!is_transfer(s.kind)) continue;
    const bool same = s.source.multiplet == s.target.multiplet;
    // Optical pumping inside J = 11/2 is incoherent and not a two-photon hop.
    if (s.kind == StepKind::kRestore && same) continue;
    const int df = std::abs(s.target.f - s.source.f);
    const int dm = std::abs(s.target.m - s.source.m);
    bool ok = df <= 2 && dm <= 2;
    if (ok && same && (s.kind == StepKind::kRamanTransfer || s.kind == StepKind::kRotation)) {
      ok = raman_hop_allowed(s.source, s.target);
    }
    if (!ok) {
      std::ostringstream os;
      os << "step " << k << " (" << to_string(s.kind) << ") " << to_string(s.source) << " -> "
         << to_string(s.target) << " violates |dF| <= 2, |dm| <= 2 two-photon limits";
      throw RouteError(os.str());
    }
  }
}

ErrorBudget error_budget(const PulseSchedule& schedule, const HyperfineConfig& cfg,
                         Quantity field, Quantity rabi, double phase_error_target,
                         const RegisterMap& map) {
  schedule.validate();
  const double b = field.in(Unit::kGauss);
  if (!(b > 0.0)) throw std::invalid_argument("error_budget: field must be positive");
  if (!(rabi.in(Unit::kHertz) > 0.0)) {
    throw std::invalid_argument("error_budget: Rabi frequency must be positive");
  }
  if (!(phase_error_target > 0.0)) {
    throw std::invalid_argument("error_budget: phase target must be positive");
  }
  const int n = std::clamp(schedule.register_size, 1, map.size());

  double max_shift_mhz = 0.0;
  for (int i = 1; i <= n; ++i) {
    max_shift_mhz =
        std::max(max_shift_mhz, std::abs(qubit_differential_shift(map, i, cfg, field).value));
  }
  const double mu_b = constants::kBohrMagneton / constants::kPlanck * 1e-4;  // Hz / G
  const double shift_hz = mhz_to_hz(max_shift_mhz);

  ErrorBudget budget;
  for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
    const PulseStep& s = schedule.steps[k];
    StepBudget sb;
    sb.step = k;
    sb.kind = s.kind;
    const bool src_ground = s.source.multiplet == Multiplet::kGround;
    const bool dst_ground = s.target.multiplet == Multiplet::kGround;
    if (s.kind != StepKind::kFluoresce && src_ground && dst_ground) {
      // Adjacent-m pair (F, m+1) -> (F', m'+1) is off by (g_F' - g_F) mu_B B.
      sb.spectator_detuning_hz =
          std::abs(lande_gf(cfg, s.target.f) - lande_gf(cfg, s.source.f)) * mu_b * b;
    } else if (s.kind != StepKind::kFluoresce && (src_ground || dst_ground)) {
      const int f = src_ground ? s.source.f : s.target.f;
      sb.spectator_detuning_hz = lande_gf(cfg, f) * mu_b * b;
    }
    if (sb.spectator_detuning_hz) {
      sb.spectator_error =
          *sb.spectator_detuning_hz == 0.0
              ? 1.0
              : off_resonant_error(rabi, {*sb.spectator_detuning_hz, Unit::kHertz});
    }
    sb.differential_shift_hz = shift_hz;
    sb.dephasing_cycles = shift_hz * s.duration_s;
    sb.stability_requirement =
        sb.dephasing_cycles > 0.0 ? phase_error_target / sb.dephasing_cycles : 0.0;

    budget.total_spectator_error += sb.spectator_error;
    budget.worst_spectator_error = std::max(budget.worst_spectator_error, sb.spectator_error);
    budget.total_dephasing_cycles += sb.dephasing_cycles;
    budget.steps.push_back(sb);
  }
  budget.stability_requirement = budget.total_dephasing_cycles > 0.0
                                     ? phase_error_target / budget.total_dephasing_cycles
                                     : 0.0;
  return budget;
}

}  // namespace hoqc

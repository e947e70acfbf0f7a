#pragma once

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hoqc/structure.hpp"
#include "hoqc/units.hpp"

// Pulse schedules for the collectively encoded register: initialization by
// blockade + Raman walks, rotations, shelving readout and the two reset
// protocols, plus the analytic addressing-error budget of a schedule.

namespace hoqc {

enum class Multiplet {
  kGround,      // 4I_15/2, F = 4..11
  kMetastable,  // J = 11/2 member of the ground multiplet, F = 2..9
};

struct Sublevel {
  Multiplet multiplet = Multiplet::kGround;
  int f = 0;
  int m = 0;

  auto operator<=>(const Sublevel&) const = default;
};

inline Sublevel ground(HyperfineState s) { return {Multiplet::kGround, s.f, s.m}; }
inline Sublevel metastable(int f, int m) { return {Multiplet::kMetastable, f, m}; }

std::string to_string(const Sublevel& s);

/// F range of a multiplet for I = 7/2.
int multiplet_f_min(Multiplet m);
int multiplet_f_max(Multiplet m);

enum class StepKind { kBlockadePrep, kRamanTransfer, kRotation, kShelve, kFluoresce, kRestore };

std::string_view to_string(StepKind kind);

struct PulseStep {
  StepKind kind = StepKind::kRamanTransfer;
  Sublevel source;
  Sublevel target;
  double duration_s = 0.0;
  // Net transition frequency in Hz; absent when an end lies in the metastable
  // multiplet, whose hyperfine constants are not modeled.
  std::optional<double> frequency_hz;
  int bit = 0;  // physical register slot the step serves
  std::string note;
};

struct PulseSchedule {
  int register_size = 0;
  std::vector<PulseStep> steps;

  /// Checks durations and that transfers move population somewhere.
  void validate() const;
  void append(const PulseSchedule& other);
  std::size_t count(StepKind kind) const;
};

struct ScheduleTiming {
  HyperfineConfig hyperfine{};
  Quantity field{50.0, Unit::kGauss};
  Quantity rabi{100.0, Unit::kKilohertz};  // single-atom Rabi frequency
  long atoms = 100;                        // K, collective sqrt(K) speed-up
  Quantity readout_time{50.0, Unit::kMicrosecond};
  Quantity pump_time{10.0, Unit::kMicrosecond};
};

/// Two-photon Raman hop limits. Hops with Delta F = 0 are excluded: under a
/// linear Zeeman shift an adjacent-m pair in the same manifold is exactly
/// degenerate with the addressed one.
struct HopRule {
  int max_df = 2;
  int max_dm = 2;
  bool allow_zero_df = false;
};

bool raman_hop_allowed(const Sublevel& from, const Sublevel& to, const HopRule& rule = {});

class RouteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest Raman path inside one multiplet that avoids `blocked`; includes
/// both end points. Deterministic for fixed inputs. Throws RouteError.
std::vector<Sublevel> raman_route(const Sublevel& from, const Sublevel& to,
                                  const std::set<Sublevel>& blocked = {},
                                  const HopRule& rule = {});

const RegisterMap& canonical_register_map();

/// Metastable sublevel used to shelve or restore ground state `s`: the
/// nearest |F',m'> of J = 11/2 with |F'-F| <= 2 and |m'-m| <= 2.
Sublevel shelf_partner(HyperfineState s);

/// Blockade preparation of each bit's |0_i> from the reservoir followed by a
/// Raman walk, bits prepared in order 1..n_qubits.
PulseSchedule init_schedule(const RegisterMap& map, int n_qubits,
                            const ScheduleTiming& timing = {});

PulseSchedule rotation_schedule(const RegisterMap& map, int register_size, int slot,
                                const ScheduleTiming& timing = {});

/// Shelve |1_i> into J = 11/2, then fluoresce on r1 with r2, r3 repumping.
PulseSchedule measurement_schedule(const RegisterMap& map, int register_size, int slot,
                                   const ScheduleTiming& timing = {});

/// Return the measured atom to |s>, move every bit above `hole` down one
/// slot, and reinitialize the top bit from the reservoir.
PulseSchedule swap_down_schedule(const RegisterMap& map, int register_size, int hole,
                                 const ScheduleTiming& timing = {});

/// Return the measured atom to |s>, blockade it into J = 11/2, walk there to
/// the partner of |0_slot> and transfer back to the ground multiplet.
PulseSchedule shelf_restore_schedule(const RegisterMap& map, int register_size, int slot,
                                     const ScheduleTiming& timing = {});

/// Throws RouteError when a transfer step breaks the two-photon limits
/// (|dF| <= 2, |dm| <= 2, and for Raman hops inside a multiplet dF != 0).
void validate_route(const PulseSchedule& schedule);

struct StepBudget {
  std::size_t step = 0;
  StepKind kind = StepKind::kRamanTransfer;
  std::optional<double> spectator_detuning_hz;  // absent: no register spectator
  double spectator_error = 0.0;
  double differential_shift_hz = 0.0;
  double dephasing_cycles = 0.0;
  double stability_requirement = 0.0;
};

struct ErrorBudget {
  std::vector<StepBudget> steps;
  double total_spectator_error = 0.0;
  double worst_spectator_error = 0.0;
  double total_dephasing_cycles = 0.0;
  double stability_requirement = 0.0;  // fractional field stability over the whole schedule
};

/// Per step: worst adjacent-m spectator transfer probability at the actual
/// Zeeman detuning, and the field stability needed to hold the largest
/// register differential Zeeman phase below `phase_error_target`.
ErrorBudget error_budget(const PulseSchedule& schedule, const HyperfineConfig& cfg,
                         Quantity field, Quantity rabi, double phase_error_target = 1e-3,
                         const RegisterMap& map = canonical_register_map());

}  // namespace hoqc

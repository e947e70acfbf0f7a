#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoqc/units.hpp"

// Ground-state hyperfine structure of 165Ho (I = 7/2, 4f^11 6s^2 4I_15/2),
// the 60-qubit register assignment over its 128 sublevels, the laser
// transition catalog, and Zeeman addressing estimates.

namespace hoqc {

struct HyperfineConfig {
  double nuclear_spin = 3.5;     // I
  double electronic_j = 7.5;     // J
  double orbital_l = 6.0;        // L, used for g_J in L-S coupling
  double spin_s = 1.5;           // S
  // Ground-multiplet hyperfine constants. These reproduce the 4.31 and
  // 8.28 GHz end splittings of the qubit manifolds.
  Quantity a_constant{800.583, Unit::kMegahertz};
  Quantity b_constant{-1668.0, Unit::kMegahertz};

  int f_min() const;
  int f_max() const;
  void validate() const;
};

struct HyperfineState {
  int f = 0;
  int m = 0;

  auto operator<=>(const HyperfineState&) const = default;
};

std::ostream& operator<<(std::ostream& os, const HyperfineState& s);

/// Casimir A/B hyperfine energy of manifold F, in MHz.
Quantity hyperfine_energy(const HyperfineConfig& cfg, int f);

double lande_gj(double l, double s, double j);
/// g_F with the nuclear contribution neglected.
double lande_gf(double gj, double i, double j, int f);
double lande_gf(const HyperfineConfig& cfg, int f);

/// Linear Zeeman shift g_F mu_B B m, in MHz.
Quantity zeeman_shift(const HyperfineConfig& cfg, HyperfineState state, Quantity field);

struct QubitAssignment {
  int index = 0;  // 1-based
  HyperfineState zero;
  HyperfineState one;
};

struct RegisterMap {
  std::vector<QubitAssignment> qubits;
  HyperfineState reservoir{11, 11};
  std::vector<HyperfineState> excluded;

  int size() const { return static_cast<int>(qubits.size()); }
  /// Throws std::out_of_range for indices outside 1..size().
  const QubitAssignment& qubit(int index) const;
};

/// Canonical assignment: |0_i> = |F,m>, |1_i> = |F+1,m> for F in {4,6,8,10}
/// with m ascending, so bit 1 is |4,-4> and bit 60 is |10,10>.
RegisterMap build_register_map();

/// 0-1 splitting of qubit `index` at field B, in GHz.
Quantity qubit_splitting(const RegisterMap& map, int index, const HyperfineConfig& cfg,
                         Quantity field);

/// Zeeman part of the 0-1 splitting (shift of |1_i> minus shift of |0_i>), MHz.
Quantity qubit_differential_shift(const RegisterMap& map, int index,
                                  const HyperfineConfig& cfg, Quantity field);

/// Separation between rotation resonances of adjacent-m qubits in the
/// F-1 <-> F pair, |g_F - g_{F-1}| mu_B B, in kHz. F must be 5, 7, 9 or 11.
Quantity rotation_selectivity(const HyperfineConfig& cfg, int f, Quantity field);
/// Field needed for the F-1 <-> F rotation resonances to sit `separation` apart.
Quantity rotation_field_for_separation(const HyperfineConfig& cfg, int f,
                                       Quantity separation);

/// Adjacent-m separation for shelving / Rydberg addressing out of manifold F,
/// g_F mu_B B, in MHz.
Quantity shelving_selectivity(const HyperfineConfig& cfg, int f, Quantity field);
/// Smallest shelving selectivity over all ground manifolds, in MHz.
Quantity worst_shelving_selectivity(const HyperfineConfig& cfg, Quantity field);
/// Field giving `separation` for the worst-case manifold.
Quantity shelving_field_for_separation(const HyperfineConfig& cfg, Quantity separation);

/// Upper bound Omega^2 / (Omega^2 + delta^2) on transfer of a spectator.
double off_resonant_error(Quantity rabi, Quantity detuning);

/// Fractional field stability keeping the accumulated differential phase
/// below `phase_error_target`: target / (shift [Hz] x duration [s]).
double field_stability_requirement(double phase_error_target, Quantity differential_shift,
                                   Quantity duration);

/// Reduction in bias-field requirement from swapping a bit out of `high`
/// (F, F') into `low` before rotating: |g_{low.F} - g_{high.F'}| /
/// |g_{high.F} - g_{high.F'}|.
double swap_mitigation_factor(const HyperfineConfig& cfg, std::pair<int, int> high,
                              std::pair<int, int> low);

/// hbar gamma / (2 k_B), in uK.
Quantity doppler_limit(Quantity gamma);

struct Transition {
  std::string key;
  double wavelength_nm = 0.0;  // vacuum
  std::string upper_level;
  std::optional<double> gamma;  // s^-1, absent where unmeasured
  bool closed_cycle = false;
  std::string role;
};

struct TransitionCatalog {
  std::vector<Transition> transitions;

  /// Throws std::out_of_range for an unknown key.
  const Transition& at(const std::string& key) const;
};

TransitionCatalog default_transition_catalog();

/// Throws std::domain_error when the transition's linewidth is unknown.
Quantity doppler_limit(const Transition& transition);

void write_catalog_csv(std::ostream& os, const TransitionCatalog& catalog);

}  // namespace hoqc

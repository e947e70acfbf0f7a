#pragma once

#include "hoqc/units.hpp"

// Closed-form scaling laws for long-range Rydberg gates in a lattice:
// van der Waals C6, blackbody-limited lifetime, gate error, maximum gate
// range, minimum site spacing and the resulting connected-site budgets.
//
// Principal quantum numbers are reals here so that scans over n stay
// continuous; ScalingParams::validate() is where integrality is enforced.

namespace hoqc {

struct ScalingParams {
  double n = 100.0;
  double k_delta = 5.0;     // Forster defect delta = k_delta E_R / n^4
  double k1 = 1.89;         // D_min = k1 a0 n^2
  double tau0 = 54e-9;      // s, tau = tau0 n^2
  double error_target = 1e-3;
  int dim = 2;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct EnsembleParams {
  long atoms = 100;            // K
  double filling = 0.5;        // f
  double d_min = 0.7e-6;       // m, intra-ensemble lattice period
  double site_pitch = 5.3e-6;  // m, inter-ensemble spacing D
  long register_size = 60;     // N

  void validate() const;
};

struct ArchitectureReport {
  Quantity c6;                   // J m^6
  Quantity tau;                  // s
  Quantity optimal_interaction;  // rad/s
  Quantity r_max;                // m
  Quantity d_min;                // m, k1 a0 n^2 of the single-atom lattice
  Quantity ensemble_diameter;    // m
  Quantity site_pitch;           // m
  // Side of the gate-connected array, taken as R_max rather than the square
  // inscribed in the R_max disc.
  Quantity array_side;           // m
  double k1_eff = 0.0;           // site_pitch / (a0 n^2)
  int dim = 2;
  double sites_continuous = 0.0;
  long n_sites = 0;
  long register_size = 0;
  long qubits_total = 0;
};

Quantity c6_asymptotic(double n);
Quantity c6_forster(double n, double k_delta);
Quantity rydberg_lifetime(double n, Quantity tau0);

/// Minimum two-qubit gate error averaged over input states,
/// E = 3 pi^(2/3) / 2^(1/3) (Omega tau)^(-2/3).
double gate_error(Quantity omega, Quantity tau);
/// Inverse of gate_error: the Omega tau product achieving `error`.
double rabi_tau_product(double error);

/// Delta_opt = 3 pi / (8^(1/3) tau E), returned as rad/s.
Quantity optimal_interaction(Quantity tau, double error);

Quantity r_max(Quantity c6, Quantity tau, double error);
Quantity interaction_strength(Quantity c6, Quantity separation);

/// Amplitude suppression of the large-r radial wavefunction at k1 times the
/// position of its maximum: e^{n*(k1-1)} / k1^{n*-1}.
double tail_suppression(double n_star, double k1);
/// Root k1 >= 1 of tail_suppression(n_star, k1) == target.
double solve_k1(double n_star, double suppression_target);

Quantity d_min(double n_max, double k1);

double sites_ratio_continuous(Quantity r_max, Quantity pitch, int dim);
/// (pi/4)(R/D)^2 or (pi/6)(R/D)^3, rounded to the nearest whole site.
long n_max_sites_ratio(Quantity r_max, Quantity pitch, int dim);

double n_max_closed_form_continuous(const ScalingParams& params);
long n_max_closed_form(const ScalingParams& params);

Quantity ensemble_diameter(long atoms, double filling, Quantity d_min);

ArchitectureReport architecture_report(const ScalingParams& scaling,
                                       const EnsembleParams& ensemble);

long logical_budget(long physical_qubits, long physical_per_logical);

}  // namespace hoqc

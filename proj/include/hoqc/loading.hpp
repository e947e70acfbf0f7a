#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hoqc/units.hpp"

// Monte Carlo of ensemble preparation: Poisson filling of a cubic lattice,
// purge of multiply occupied sites, and cropping to a spherical bottle beam
// centred on a lattice site.

namespace hoqc {

enum class PurgeModel {
  kPairLoss,     // multiply occupied sites are emptied
  kOddSurvivor,  // pairs leave, so a site keeps n mod 2 atoms
};

struct LoadingConfig {
  double lattice_period = 0.7e-6;  // m
  double atom_density = 1.5e18;    // m^-3
  double bottle_diameter = 5.1e-6; // m
  int lattice_extent = 11;         // sites per axis, odd
  long trials = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  PurgeModel purge = PurgeModel::kPairLoss;
  int register_size = 60;

  /// Mean atoms per site, n_a Lambda^3.
  double filling() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct LoadingStats {
  double filling = 0.0;           // lambda
  long trials = 0;
  long lattice_sites = 0;         // per trial
  long sites_in_sphere = 0;
  double mean_k = 0.0;            // singly occupied sites in the bottle after purge
  double std_k = 0.0;
  double mean_k_prepurge = 0.0;   // atoms in the bottle before purge
  double std_k_prepurge = 0.0;
  double multi_occupancy_fraction = 0.0;  // lattice sites with n >= 2, before purge
  std::vector<long> occupancy_histogram;  // [n] = lattice sites holding n atoms, all trials
  std::vector<int> k_per_trial;
  std::vector<double> rabi_spread_per_qubit;  // index q - 1; stops where support <= 0
};

/// 1 / period^3, returned in m^-3.
Quantity lattice_density(Quantity period);

/// Poisson P(n >= 2) = 1 - e^-lambda (1 + lambda).
double double_occupancy_prob(double fill_fraction);

/// True iff the centre of site (i, j, k), counted from the bottle centre, lies
/// strictly inside the bottle: (i^2 + j^2 + k^2) period^2 < (diameter / 2)^2,
/// so a zero-diameter bottle holds no site.
bool site_in_bottle(int i, int j, int k, double period, double diameter);

long count_sites_in_bottle(double period, double diameter, int lattice_extent);

/// sqrt(1 + std_K / (K - q + 1)) - 1 for qubit q of a register of
/// `register_size` bits; requires mean_k > register_size.
double rabi_variation(double mean_k, double std_k, int qubit_index, int register_size);

/// Parallel over trials; identical results for any thread count.
LoadingStats simulate_loading(const LoadingConfig& cfg);

/// Columns K, trials.
void write_k_histogram_csv(std::ostream& os, const LoadingStats& stats);

}  // namespace hoqc

#pragma once

#include <numbers>

// CODATA 2018 recommended values, SI. Exact values (h, c, e, k_B) are
// defined by the 2019 SI redefinition.
namespace hoqc::constants {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double kPlanck = 6.62607015e-34;                 // J s (exact)
inline constexpr double kHbar = kPlanck / (2.0 * kPi);            // J s
inline constexpr double kSpeedOfLight = 299792458.0;              // m / s (exact)
inline constexpr double kElementaryCharge = 1.602176634e-19;      // C (exact)
inline constexpr double kBohrRadius = 5.29177210903e-11;          // m
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;   // F / m
inline constexpr double kRydbergEnergy = 2.179872361103542e-18;   // J, h c R_inf
inline constexpr double kHartreeEnergy = 2.0 * kRydbergEnergy;    // J
inline constexpr double kBoltzmann = 1.380649e-23;                // J / K (exact)
inline constexpr double kBohrMagneton = 9.2740100783e-24;         // J / T
inline constexpr double kFineStructure = 7.2973525693e-3;         // dimensionless
inline constexpr double kElectronMass = 9.1093837015e-31;         // kg

}  // namespace hoqc::constants

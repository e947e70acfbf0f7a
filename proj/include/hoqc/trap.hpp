#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hoqc/units.hpp"

// Optical dipole trap built from a table of atomic levels: each dipole-allowed
// level with known decay rate contributes a rotating-wave two-level light shift
// and scattering rate. The counter-rotating (omega + omega_a) term is not
// included.

namespace hoqc {

enum class Parity { kEven, kOdd };

struct LevelRecord {
  double energy_cm1 = 0.0;
  Parity parity = Parity::kEven;
  double j = 0.0;
  std::optional<double> gamma;  // s^-1, decay rate to the ground state
  std::string label;
  int line = 0;  // source line, 0 when built in code

  bool gamma_known() const { return gamma.has_value(); }
};

struct LevelTable {
  std::vector<LevelRecord> levels;  // sorted by energy
  std::string source;
  std::vector<std::string> warnings;
};

class LevelParseError : public std::runtime_error {
 public:
  LevelParseError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Comma-separated text. The first non-comment line is a header naming the
/// columns energy_cm1, parity, J, gamma_s1 and label in any order; gamma_s1
/// and label may be omitted. `#` starts a comment line. J accepts "15/2" or
/// "7.5". Parity is `e` or `o`.
LevelTable parse_levels(std::string_view text, std::string source = {});
LevelTable load_levels(const std::filesystem::path& path);

/// The two strong lines near 410 nm with measured decay rates, plus the two
/// dipole-allowed levels whose lifetimes are unknown.
LevelTable documented_ho_levels();

struct GroundLevel {
  Parity parity = Parity::kOdd;
  double j = 7.5;
};

bool dipole_allowed(const LevelRecord& level, const GroundLevel& ground = {});

struct BeamParams {
  Quantity power{5.0, Unit::kMilliwatt};
  Quantity waist{5.0, Unit::kMicrometer};  // 1/e^2 intensity radius

  void validate() const;
};

/// 2P / (pi w^2).
Quantity peak_intensity(const BeamParams& beam);

/// U = (3 pi / 2)(c^2 / omega_a^3)(gamma / Delta) I with Delta = omega - omega_a;
/// positive (repulsive) for blue detuning. Returned in J.
Quantity line_potential(Quantity gamma, Quantity omega_a, Quantity omega_laser,
                        Quantity intensity);

/// r = (3 pi / 2)(c^2 / hbar omega_a^3)(gamma / Delta)^2 I, in s^-1.
Quantity line_scattering(Quantity gamma, Quantity omega_a, Quantity omega_laser,
                         Quantity intensity);

struct SpectrumPoint {
  double energy_cm1 = 0.0;
  std::optional<double> depth_uk;
  std::optional<double> scatter_s1;
  std::string flag;  // empty for a good point
};

struct TrapSpectrum {
  std::vector<SpectrumPoint> points;
  int levels_used = 0;
  std::vector<std::string> coverage_warnings;
};

struct SpectrumOptions {
  double min_detuning_cm1 = 1.0;
  GroundLevel ground{};
};

/// Sums line potentials and scattering rates of every gamma-known,
/// dipole-allowed level at each laser energy. Points within
/// `min_detuning_cm1` of a contributing resonance are flagged, not fatal.
TrapSpectrum trap_spectrum(const LevelTable& levels, const BeamParams& beam,
                           std::span<const double> energies_cm1,
                           const SpectrumOptions& options = {});

void write_spectrum_csv(std::ostream& os, const TrapSpectrum& spectrum);

/// k_B T / U, clamped to 1.
double blue_trap_scatter_reduction(Quantity temperature, Quantity depth);

}  // namespace hoqc

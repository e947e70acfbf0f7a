#include "hoqc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hoqc/constants.hpp"

namespace hoqc {

namespace {

using namespace constants;

// mu_B / h in MHz per gauss.
double bohr_magneton_mhz_per_gauss() { return kBohrMagneton / kPlanck * 1e-4 * 1e-6; }

bool is_half_integer_multiple(double x) {
  const double twice = 2.0 * x;
  return std::isfinite(x) && x >= 0.0 && twice == std::round(twice);
}

void require_f(const HyperfineConfig& cfg, int f, const char* who) {
  if (f < cfg.f_min() || f > cfg.f_max()) {
    std::ostringstream os;
    os << who << ": F=" << f << " outside [" << cfg.f_min() << ", " << cfg.f_max() << "]";
    throw std::out_of_range(os.str());
  }
}

double field_gauss(Quantity field, const char* who) {
  const double b = field.in(Unit::kGauss);
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument(std::string(who) + ": field must be non-negative");
  }
  return b;
}

}  // namespace

int HyperfineConfig::f_min() const {
  return static_cast<int>(std::lround(std::abs(electronic_j - nuclear_spin)));
}

int HyperfineConfig::f_max() const {
  return static_cast<int>(std::lround(electronic_j + nuclear_spin));
}

void HyperfineConfig::validate() const {
  if (!is_half_integer_multiple(nuclear_spin) || !is_half_integer_multiple(electronic_j) ||
      !is_half_integer_multiple(orbital_l) || !is_half_integer_multiple(spin_s)) {
    throw std::invalid_argument("hyperfine: angular momenta must be non-negative multiples of 1/2");
  }
  const double sum = nuclear_spin + electronic_j;
  if (sum != std::round(sum)) {
    throw std::invalid_argument("hyperfine: I + J must be an integer (integer F manifolds)");
  }
  if (nuclear_spin < 1.0 || electronic_j < 1.0) {
    throw std::invalid_argument("hyperfine: B-term needs I >= 1 and J >= 1");
  }
  if (electronic_j < std::abs(orbital_l - spin_s) || electronic_j > orbital_l + spin_s) {
    throw std::invalid_argument("hyperfine: J not reachable from L and S");
  }
  (void)a_constant.in(Unit::kMegahertz);
  (void)b_constant.in(Unit::kMegahertz);
}

std::ostream& operator<<(std::ostream& os, const HyperfineState& s) {
  return os << '|' << s.f << ',' << s.m << '>';
}

Quantity hyperfine_energy(const HyperfineConfig& cfg, int f) {
  require_f(cfg, f, "hyperfine_energy");
  const double i = cfg.nuclear_spin;
  const double j = cfg.electronic_j;
  const double a = cfg.a_constant.in(Unit::kMegahertz);
  const double b = cfg.b_constant.in(Unit::kMegahertz);
  const double ii = i * (i + 1.0);
  const double jj = j * (j + 1.0);
  const double k = f * (f + 1.0) - ii - jj;
  const double quad = (1.5 * k * (k + 1.0) - 2.0 * ii * jj) /
                      (2.0 * i * (2.0 * i - 1.0) * 2.0 * j * (2.0 * j - 1.0));
  return {0.5 * a * k + b * quad, Unit::kMegahertz};
}

double lande_gj(double l, double s, double j) {
  if (!(j > 0.0) || l < 0.0 || s < 0.0 || j < std::abs(l - s) || j > l + s) {
    throw std::invalid_argument("lande_gj: inconsistent L, S, J");
  }
  const double jj = j * (j + 1.0);
  return 1.0 + (jj + s * (s + 1.0) - l * (l + 1.0)) / (2.0 * jj);
}

double lande_gf(double gj, double i, double j, int f) {
  if (f <= 0) throw std::invalid_argument("lande_gf: F must be positive");
  if (f < std::abs(j - i) - 1e-9 || f > j + i + 1e-9) {
    throw std::out_of_range("lande_gf: F outside |J-I|..J+I");
  }
  const double ff = f * (f + 1.0);
  return gj * (ff + j * (j + 1.0) - i * (i + 1.0)) / (2.0 * ff);
}

double lande_gf(const HyperfineConfig& cfg, int f) {
  return lande_gf(lande_gj(cfg.orbital_l, cfg.spin_s, cfg.electronic_j), cfg.nuclear_spin,
                  cfg.electronic_j, f);
}

Quantity zeeman_shift(const HyperfineConfig& cfg, HyperfineState state, Quantity field) {
  require_f(cfg, state.f, "zeeman_shift");
  if (std::abs(state.m) > state.f) throw std::out_of_range("zeeman_shift: |m| > F");
  const double b = field_gauss(field, "zeeman_shift");
  return {lande_gf(cfg, state.f) * bohr_magneton_mhz_per_gauss() * b * state.m,
          Unit::kMegahertz};
}

const QubitAssignment& RegisterMap::qubit(int index) const {
  if (index < 1 || index > size()) {
    throw std::out_of_range("register map: qubit index " + std::to_string(index) +
                            " outside 1.." + std::to_string(size()));
  }
  return qubits[static_cast<std::size_t>(index - 1)];
}

RegisterMap build_register_map() {
  RegisterMap map;
  int index = 1;
  for (int f = 4; f <= 10; f += 2) {
    for (int m = -f; m <= f; ++m) {
      map.qubits.push_back({index++, {f, m}, {f + 1, m}});
    }
  }
  for (int f = 5; f <= 11; f += 2) {
    map.excluded.push_back({f, -f});
    map.excluded.push_back({f, f});
  }
  return map;
}

Quantity qubit_differential_shift(const RegisterMap& map, int index,
                                  const HyperfineConfig& cfg, Quantity field) {
  const QubitAssignment& q = map.qubit(index);
  return {zeeman_shift(cfg, q.one, field).value - zeeman_shift(cfg, q.zero, field).value,
          Unit::kMegahertz};
}

Quantity qubit_splitting(const RegisterMap& map, int index, const HyperfineConfig& cfg,
                         Quantity field) {
  const QubitAssignment& q = map.qubit(index);
  const double hf = hyperfine_energy(cfg, q.one.f).value - hyperfine_energy(cfg, q.zero.f).value;
  const double zeeman = qubit_differential_shift(map, index, cfg, field).value;
  return convert({hf + zeeman, Unit::kMegahertz}, Unit::kGigahertz);
}

namespace {

void require_upper_qubit_level(const HyperfineConfig& cfg, int f, const char* who) {
  require_f(cfg, f, who);
  if (f - 1 < cfg.f_min() || (f - cfg.f_min()) % 2 != 1) {
    std::ostringstream os;
    os << who << ": F=" << f << " is not the upper level of a qubit pair";
    throw std::invalid_argument(os.str());
  }
}

double rotation_slope_khz_per_gauss(const HyperfineConfig& cfg, int f) {
  return std::abs(lande_gf(cfg, f) - lande_gf(cfg, f - 1)) * bohr_magneton_mhz_per_gauss() *
         1e3;
}

}  // namespace

Quantity rotation_selectivity(const HyperfineConfig& cfg, int f, Quantity field) {
  require_upper_qubit_level(cfg, f, "rotation_selectivity");
  const double b = field_gauss(field, "rotation_selectivity");
  return {rotation_slope_khz_per_gauss(cfg, f) * b, Unit::kKilohertz};
}

Quantity rotation_field_for_separation(const HyperfineConfig& cfg, int f,
                                       Quantity separation) {
  require_upper_qubit_level(cfg, f, "rotation_field_for_separation");
  return {separation.in(Unit::kKilohertz) / rotation_slope_khz_per_gauss(cfg, f),
          Unit::kGauss};
}

Quantity shelving_selectivity(const HyperfineConfig& cfg, int f, Quantity field) {
  require_f(cfg, f, "shelving_selectivity");
  const double b = field_gauss(field, "shelving_selectivity");
  return {lande_gf(cfg, f) * bohr_magneton_mhz_per_gauss() * b, Unit::kMegahertz};
}

Quantity worst_shelving_selectivity(const HyperfineConfig& cfg, Quantity field) {
  Quantity worst = shelving_selectivity(cfg, cfg.f_min(), field);
  for (int f = cfg.f_min() + 1; f <= cfg.f_max(); ++f) {
    const Quantity s = shelving_selectivity(cfg, f, field);
    if (s.value < worst.value) worst = s;
  }
  return worst;
}

Quantity shelving_field_for_separation(const HyperfineConfig& cfg, Quantity separation) {
  const double per_gauss = worst_shelving_selectivity(cfg, {1.0, Unit::kGauss}).value;
  return {separation.in(Unit::kMegahertz) / per_gauss, Unit::kGauss};
}

double off_resonant_error(Quantity rabi, Quantity detuning) {
  const double omega = rabi.in(Unit::kHertz);
  const double delta = detuning.in(Unit::kHertz);
  if (delta == 0.0) throw std::invalid_argument("off_resonant_error: zero detuning");
  const double w2 = omega * omega;
  return w2 / (w2 + delta * delta);
}

double field_stability_requirement(double phase_error_target, Quantity differential_shift,
                                   Quantity duration) {
  const double shift = differential_shift.in(Unit::kHertz);
  const double t = duration.in(Unit::kSecond);
  if (!(phase_error_target > 0.0) || !(std::abs(shift) > 0.0) || !(t > 0.0)) {
    throw std::invalid_argument(
        "field_stability_requirement: target, shift and duration must be positive");
  }
  return phase_error_target / (std::abs(shift) * t);
}

double swap_mitigation_factor(const HyperfineConfig& cfg, std::pair<int, int> high,
                              std::pair<int, int> low) {
  for (int f : {high.first, high.second, low.first, low.second}) {
    require_f(cfg, f, "swap_mitigation_factor");
  }
  const double g_partner = lande_gf(cfg, high.second);
  const double denom = std::abs(lande_gf(cfg, high.first) - g_partner);
  if (denom == 0.0) {
    throw std::invalid_argument("swap_mitigation_factor: degenerate high pair");
  }
  return std::abs(lande_gf(cfg, low.first) - g_partner) / denom;
}

Quantity doppler_limit(Quantity gamma) {
  const double g = gamma.in(Unit::kPerSecond);
  if (!(g > 0.0)) throw std::invalid_argument("doppler_limit: gamma must be positive");
  return convert({kHbar * g / (2.0 * kBoltzmann), Unit::kKelvin}, Unit::kMicrokelvin);
}

const Transition& TransitionCatalog::at(const std::string& key) const {
  auto it = std::find_if(transitions.begin(), transitions.end(),
                         [&](const Transition& t) { return t.key == key; });
  if (it == transitions.end()) throw std::out_of_range("unknown transition '" + key + "'");
  return *it;
}

TransitionCatalog default_transition_catalog() {
  const std::string fds = "4f10 5d 6s2 J=17/2";
  const std::string fsp = "4f10 6s 6p J=17/2";
  const std::string shelf = "4f11(4I15/2) 6s6p(3P1) J=13/2";
  const std::string readout = "4f11(4I15/2) 6s6p(3P2)";
  return {{
      {"a", 1193.0, fds, std::nullopt, true, "cooling"},
      {"b", 867.3, fds, std::nullopt, true, "cooling"},
      {"c", 660.9, fds, std::nullopt, true, "cooling"},
      {"d", 608.3, fds, 0.25e6, true, "cooling"},
      {"e", 598.5, fsp, 0.92e6, true, "cooling; Raman intermediate"},
      {"f", 545.3, fsp, std::nullopt, true, "cooling; reservoir pumping"},
      {"g", 410.5, "4f11(4I15/2) 6s6p(1P1) J=17/2", 204e6, false, "capture cooling"},
      {"s1", 586.2, shelf, std::nullopt, false, "shelving to J=11/2"},
      {"s2", 1183.0, shelf, std::nullopt, false, "shelving to J=11/2"},
      {"r1", 878.8, readout, std::nullopt, false, "fluorescence readout from J=11/2"},
      {"r2", 1231.0, readout, std::nullopt, false, "readout repumper"},
      {"r3", 746.2, readout, std::nullopt, false, "readout repumper"},
  }};
}

Quantity doppler_limit(const Transition& transition) {
  if (!transition.gamma) {
    throw std::domain_error("transition " + transition.key + ": linewidth unknown");
  }
  return doppler_limit(Quantity{*transition.gamma, Unit::kPerSecond});
}

void write_catalog_csv(std::ostream& os, const TransitionCatalog& catalog) {
  os << "key,wavelength_nm,upper_level,gamma_s1,closed_cycle,role\n";
  for (const Transition& t : catalog.transitions) {
    os << t.key << ',' << t.wavelength_nm << ",\"" << t.upper_level << "\",";
    if (t.gamma) os << *t.gamma;
    os << ',' << (t.closed_cycle ? "true" : "false") << ",\"" << t.role << "\"\n";
  }
}

}  // namespace hoqc

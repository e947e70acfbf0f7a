#include "hoqc/scaling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hoqc/constants.hpp"

namespace hoqc {

namespace {

using namespace constants;

constexpr double kMinN = 30.0;
constexpr double kMaxN = 500.0;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void require_n(double n, const char* who) {
  if (!std::isfinite(n) || n < kMinN || n > kMaxN) {
    std::ostringstream os;
    os << who << ": principal quantum number " << n << " outside [" << kMinN << ", "
       << kMaxN << "]";
    fail(os.str());
  }
}

void require_positive(double v, const char* who, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(std::string(who) + ": " + what + " must be positive and finite");
  }
}

void require_error(double e, const char* who) {
  if (!(e > 0.0 && e < 1.0)) fail(std::string(who) + ": error must lie in (0, 1)");
}

// (1/(4 pi eps0))^2 (3/2)^4 q^4 a0^4 / E_R, the n-independent part of C6.
double c6_prefactor() {
  const double coulomb = 1.0 / (4.0 * kPi * kVacuumPermittivity);
  const double q2 = kElementaryCharge * kElementaryCharge;
  const double a02 = kBohrRadius * kBohrRadius;
  return coulomb * coulomb * 5.0625 * q2 * q2 * a02 * a02 / kRydbergEnergy;
}

long round_sites(double x) { return std::lround(x); }

}  // namespace

void ScalingParams::validate() const {
  if (!std::isfinite(n) || n != std::floor(n)) fail("scaling.n must be an integer");
  require_n(n, "scaling.n");
  require_positive(k_delta, "scaling.k_delta", "k_delta");
  if (!(k1 > 1.0)) fail("scaling.k1 must exceed 1");
  require_positive(tau0, "scaling.tau0", "tau0");
  require_error(error_target, "scaling.error_target");
  if (dim != 2 && dim != 3) fail("scaling.dim must be 2 or 3");
}

void EnsembleParams::validate() const {
  if (atoms < 1) fail("ensemble.atoms must be at least 1");
  if (!(filling > 0.0 && filling <= 1.0)) fail("ensemble.filling must lie in (0, 1]");
  require_positive(d_min, "ensemble.d_min", "d_min");
  require_positive(site_pitch, "ensemble.site_pitch", "site_pitch");
  if (register_size < 1) fail("ensemble.register_size must be at least 1");
  if (atoms < register_size) {
    fail("ensemble.atoms must be >= ensemble.register_size (collective encoding needs K >= N)");
  }
}

Quantity c6_asymptotic(double n) {
  require_n(n, "c6_asymptotic");
  return {c6_prefactor() * std::pow(n, 11), Unit::kJouleMeter6};
}

Quantity c6_forster(double n, double k_delta) {
  require_n(n, "c6_forster");
  require_positive(k_delta, "c6_forster", "k_delta");
  return {c6_prefactor() / k_delta * std::pow(n, 12), Unit::kJouleMeter6};
}

Quantity rydberg_lifetime(double n, Quantity tau0) {
  require_n(n, "rydberg_lifetime");
  const double t0 = tau0.in(Unit::kSecond);
  require_positive(t0, "rydberg_lifetime", "tau0");
  return {t0 * n * n, Unit::kSecond};
}

namespace {
const double kGateErrorConstant = 3.0 * std::cbrt(kPi * kPi) / std::cbrt(2.0);
}

double gate_error(Quantity omega, Quantity tau) {
  const double w = omega.in(Unit::kRadianPerSecond);
  const double t = tau.in(Unit::kSecond);
  require_positive(w, "gate_error", "omega");
  require_positive(t, "gate_error", "tau");
  return kGateErrorConstant / std::cbrt((w * t) * (w * t));
}

double rabi_tau_product(double error) {
  require_error(error, "rabi_tau_product");
  return std::pow(kGateErrorConstant / error, 1.5);
}

Quantity optimal_interaction(Quantity tau, double error) {
  const double t = tau.in(Unit::kSecond);
  require_positive(t, "optimal_interaction", "tau");
  require_error(error, "optimal_interaction");
  return {3.0 * kPi / 2.0 / (t * error), Unit::kRadianPerSecond};  // 8^(1/3) == 2
}

Quantity r_max(Quantity c6, Quantity tau, double error) {
  const double c = c6.in(Unit::kJouleMeter6);
  const double t = tau.in(Unit::kSecond);
  require_positive(c, "r_max", "c6");
  require_positive(t, "r_max", "tau");
  require_error(error, "r_max");
  const double r6 = 2.0 / (3.0 * kPi) * c * t * error / kHbar;
  return {std::pow(r6, 1.0 / 6.0), Unit::kMeter};
}

Quantity interaction_strength(Quantity c6, Quantity separation) {
  const double c = c6.in(Unit::kJouleMeter6);
  const double r = separation.in(Unit::kMeter);
  require_positive(r, "interaction_strength", "separation");
  const double r3 = r * r * r;
  return {c / (kHbar * r3 * r3), Unit::kRadianPerSecond};
}

double tail_suppression(double n_star, double k1) {
  if (!(n_star > 1.0)) fail("tail_suppression: n_star must exceed 1");
  if (!(k1 >= 1.0)) fail("tail_suppression: k1 must be >= 1");
  return std::exp(n_star * (k1 - 1.0) - (n_star - 1.0) * std::log(k1));
}

double solve_k1(double n_star, double suppression_target) {
  if (!(n_star > 1.0)) fail("solve_k1: n_star must exceed 1");
  if (!(suppression_target >= 1.0) || !std::isfinite(suppression_target)) {
    fail("solve_k1: suppression target must be >= 1");
  }
  // log of tail_suppression minus log target; increasing in k1 for k1 >= 1.
  const double log_target = std::log(suppression_target);
  auto excess = [&](double k1) {
    return n_star * (k1 - 1.0) - (n_star - 1.0) * std::log(k1) - log_target;
  };
  double lo = 1.0;
  if (excess(lo) >= 0.0) return lo;
  double hi = 2.0;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) fail("solve_k1: no root in bracket");
  }
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Quantity d_min(double n_max, double k1) {
  require_n(n_max, "d_min");
  if (!(k1 >= 1.0)) fail("d_min: k1 must be >= 1");
  return {k1 * kBohrRadius * n_max * n_max, Unit::kMeter};
}

double sites_ratio_continuous(Quantity r_max, Quantity pitch, int dim) {
  const double r = r_max.in(Unit::kMeter);
  const double d = pitch.in(Unit::kMeter);
  require_positive(d, "n_max_sites_ratio", "pitch");
  if (!(r >= 0.0)) fail("n_max_sites_ratio: r_max must be non-negative");
  const double ratio = r / d;
  if (dim == 2) return kPi / 4.0 * ratio * ratio;
  if (dim == 3) return kPi / 6.0 * ratio * ratio * ratio;
  fail("n_max_sites_ratio: dim must be 2 or 3");
}

long n_max_sites_ratio(Quantity r_max, Quantity pitch, int dim) {
  return round_sites(sites_ratio_continuous(r_max, pitch, dim));
}

double n_max_closed_form_continuous(const ScalingParams& p) {
  p.validate();
  // alpha^2 m c^2 = 2 E_R, so this is the same dimensionless group that the
  // E_R in the Forster C6 produces after substituting tau = tau0 n^2 and
  // D_min = k1 a0 n^2 into (R_max / D_min)^d.
  const double group = kFineStructure * kFineStructure * kElectronMass * kSpeedOfLight *
                       kSpeedOfLight * p.tau0 / kHbar;
  if (p.dim == 2) {
    const double pre = 3.0 * std::cbrt(kPi * kPi) /
                       (std::pow(2.0, 8.0 / 3.0) * p.k1 * p.k1 * std::cbrt(p.k_delta));
    return pre * std::cbrt(group * p.error_target) * std::cbrt(p.n * p.n);
  }
  const double pre =
      std::sqrt(3.0 * kPi) / (4.0 * p.k1 * p.k1 * p.k1 * std::sqrt(p.k_delta));
  return pre * std::sqrt(group * p.error_target) * p.n;
}

long n_max_closed_form(const ScalingParams& params) {
  return round_sites(n_max_closed_form_continuous(params));
}

Quantity ensemble_diameter(long atoms, double filling, Quantity d_min) {
  if (atoms < 1) fail("ensemble_diameter: atoms must be >= 1");
  if (!(filling > 0.0 && filling <= 1.0)) fail("ensemble_diameter: filling must lie in (0, 1]");
  const double d = d_min.in(Unit::kMeter);
  require_positive(d, "ensemble_diameter", "d_min");
  return {std::cbrt(6.0 / kPi) * d * std::cbrt(static_cast<double>(atoms) / filling),
          Unit::kMeter};
}

ArchitectureReport architecture_report(const ScalingParams& scaling,
                                       const EnsembleParams& ensemble) {
  scaling.validate();
  ensemble.validate();

  ArchitectureReport report;
  report.c6 = c6_forster(scaling.n, scaling.k_delta);
  report.tau = rydberg_lifetime(scaling.n, {scaling.tau0, Unit::kSecond});
  report.optimal_interaction = optimal_interaction(report.tau, scaling.error_target);
  report.r_max = r_max(report.c6, report.tau, scaling.error_target);
  report.d_min = d_min(scaling.n, scaling.k1);
  report.ensemble_diameter =
      ensemble_diameter(ensemble.atoms, ensemble.filling, {ensemble.d_min, Unit::kMeter});
  report.site_pitch = {ensemble.site_pitch, Unit::kMeter};
  report.array_side = report.r_max;
  report.k1_eff = ensemble.site_pitch / (constants::kBohrRadius * scaling.n * scaling.n);
  report.dim = scaling.dim;
  report.sites_continuous = sites_ratio_continuous(report.r_max, report.site_pitch, scaling.dim);
  report.n_sites = round_sites(report.sites_continuous);
  report.register_size = ensemble.register_size;
  report.qubits_total = report.n_sites * ensemble.register_size;
  return report;
}

long logical_budget(long physical_qubits, long physical_per_logical) {
  if (physical_qubits < 1 || physical_per_logical < 1) {
    fail("logical_budget: both counts must be >= 1");
  }
  return physical_qubits / physical_per_logical;
}

}  // namespace hoqc

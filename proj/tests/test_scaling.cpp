#include <gtest/gtest.h>

#include <cmath>

#include "hoqc/constants.hpp"
#include "hoqc/scaling.hpp"

using namespace hoqc;
namespace c = hoqc::constants;

namespace {

// C6 in atomic units: e = a0 = 4 pi eps0 = E_h = 1 and E_R = 1/2, so
// (3/2 n^2)^4 / (k_delta / (2 n^4)) = (81/8) n^12 / k_delta.
double c6_forster_oracle(double n, double kd) {
  const double au = 81.0 / 8.0 * std::pow(n, 12) / kd;
  return Quantity(au, Unit::kHartreeBohr6).in(Unit::kJouleMeter6);
}

double c6_asymptotic_oracle(double n) {
  return Quantity(81.0 / 8.0 * std::pow(n, 11), Unit::kHartreeBohr6).in(Unit::kJouleMeter6);
}

// Ratio-form composition: (pi/4)(R_max/D_min)^2 or (pi/6)(R_max/D_min)^3.
double composed_sites(const ScalingParams& p) {
  const Quantity c6 = c6_forster(p.n, p.k_delta);
  const Quantity tau = rydberg_lifetime(p.n, {p.tau0, Unit::kSecond});
  return sites_ratio_continuous(r_max(c6, tau, p.error_target), d_min(p.n, p.k1), p.dim);
}

}  // namespace

TEST(C6, ForsterMatchesAtomicUnitOracle) {
  for (double n : {30.0, 60.0, 100.0, 150.0, 300.0}) {
    for (double kd : {1.0, 5.0, 12.5}) {
      EXPECT_NEAR(c6_forster(n, kd).value / c6_forster_oracle(n, kd), 1.0, 1e-9);
    }
  }
  EXPECT_NEAR(c6_forster(100, 5).value / 1.93862e-55, 1.0, 1e-5);
}

TEST(C6, AsymptoticMatchesOracle) {
  EXPECT_NEAR(c6_asymptotic(100).value / c6_asymptotic_oracle(100), 1.0, 1e-9);
  EXPECT_NEAR(c6_asymptotic(100).value / 9.6931e-57, 1.0, 1e-4);
  EXPECT_EQ(c6_asymptotic(100).unit, Unit::kJouleMeter6);
}

TEST(C6, ScalesAsPowersOfN) {
  EXPECT_NEAR(c6_forster(200, 5).value / c6_forster(100, 5).value, std::pow(2.0, 12), 1e-6);
  EXPECT_NEAR(c6_asymptotic(200).value / c6_asymptotic(100).value, std::pow(2.0, 11), 1e-6);
  EXPECT_THROW(c6_forster(10, 5), std::invalid_argument);
  EXPECT_THROW(c6_forster(100, 0), std::invalid_argument);
}

TEST(Lifetime, QuadraticInN) {
  EXPECT_NEAR(rydberg_lifetime(100, {54.0, Unit::kNanosecond}).in(Unit::kMicrosecond), 540.0,
              1e-9);
  EXPECT_THROW(rydberg_lifetime(100, {-1.0, Unit::kSecond}), std::invalid_argument);
}

TEST(GateError, ConstantAndInverse) {
  const double k = gate_error({1.0, Unit::kRadianPerSecond}, {1.0, Unit::kSecond});
  EXPECT_NEAR(k, 5.1075, 1e-4);
  EXPECT_NEAR(rabi_tau_product(1e-3), 365020.0, 1.0);
  for (double e : {1e-4, 1e-3, 1e-2, 0.3}) {
    const double wt = rabi_tau_product(e);
    EXPECT_NEAR(gate_error({wt, Unit::kRadianPerSecond}, {1.0, Unit::kSecond}) / e, 1.0, 1e-12);
  }
  EXPECT_THROW(rabi_tau_product(0.0), std::invalid_argument);
}

TEST(Interaction, OptimalAndRange) {
  const Quantity tau{540.0, Unit::kMicrosecond};
  EXPECT_NEAR(optimal_interaction(tau, 1e-3).value / 8.7266e6, 1.0, 1e-4);
  const Quantity c6 = c6_forster(100, 5);
  const Quantity r = r_max(c6, tau, 1e-3);
  EXPECT_NEAR(r.in(Unit::kMicrometer), 24.393, 1e-3);
  // At R_max the interaction equals the optimal interaction strength.
  EXPECT_NEAR(interaction_strength(c6, r).value / optimal_interaction(tau, 1e-3).value, 1.0,
              1e-12);
  EXPECT_NEAR(interaction_strength(c6, {5.1, Unit::kMicrometer}).value / 1.045e11, 1.0, 1e-3);
  EXPECT_NEAR(interaction_strength(c6, {24.4, Unit::kMicrometer}).value / 8.717e6, 1.0, 1e-3);
}

TEST(Spacing, TailSuppressionRoot) {
  const double k1 = solve_k1(100, 100);
  EXPECT_NEAR(k1, 1.323614, 1e-6);
  EXPECT_NEAR(tail_suppression(100, k1), 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(tail_suppression(100, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(solve_k1(100, 1.0), 1.0);
  EXPECT_THROW(solve_k1(100, 0.5), std::invalid_argument);
  EXPECT_THROW(tail_suppression(100, 0.9), std::invalid_argument);
}

TEST(Spacing, MinimumSpacing) {
  EXPECT_NEAR(d_min(100, 1.3236).in(Unit::kMicrometer), 0.70043, 1e-4);
  EXPECT_NEAR(d_min(100, 1.89).in(Unit::kMicrometer), 1.00014, 1e-4);
  EXPECT_NEAR(d_min(100, 1.0).value, c::kBohrRadius * 1e4, 1e-20);
}

TEST(Sites, RatioForm) {
  const Quantity r{24.393, Unit::kMicrometer};
  EXPECT_NEAR(sites_ratio_continuous(r, {5.3, Unit::kMicrometer}, 2), 16.636, 2e-3);
  EXPECT_EQ(n_max_sites_ratio(r, {5.3, Unit::kMicrometer}, 2), 17);
  EXPECT_NEAR(sites_ratio_continuous(r, {1.0, Unit::kMicrometer}, 2), 467.32, 2e-2);
  EXPECT_EQ(n_max_sites_ratio(r, r, 2), 1);
  EXPECT_EQ(n_max_sites_ratio(r, r, 3), 1);
  EXPECT_THROW(n_max_sites_ratio(r, {0.0, Unit::kMeter}, 2), std::invalid_argument);
  EXPECT_THROW(n_max_sites_ratio(r, r, 4), std::invalid_argument);
}

TEST(Sites, ClosedFormReference) {
  ScalingParams p;
  EXPECT_NEAR(n_max_closed_form_continuous(p), 467.18, 0.02);
  EXPECT_EQ(n_max_closed_form(p), 467);
  p.dim = 3;
  EXPECT_NEAR(n_max_closed_form_continuous(p), 7596.17, 0.05);
  EXPECT_EQ(n_max_closed_form(p), 7596);
}

TEST(Sites, ClosedFormEqualsCompositionOnGrid) {
  for (double n : {50.0, 80.0, 100.0, 150.0, 200.0}) {
    for (double e : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
      for (double k1 : {1.2, 1.5, 1.89, 2.5, 3.0}) {
        for (int dim : {2, 3}) {
          ScalingParams p;
          p.n = n;
          p.error_target = e;
          p.k1 = k1;
          p.dim = dim;
          const double composed = composed_sites(p);
          EXPECT_NEAR(n_max_closed_form_continuous(p) / composed, 1.0, 1e-9);
          EXPECT_LE(std::labs(n_max_closed_form(p) - std::lround(composed)), 1);
        }
      }
    }
  }
}

TEST(Sites, PowerLawInN) {
  ScalingParams a, b;
  b.n = 200;
  EXPECT_NEAR(n_max_closed_form_continuous(b) / n_max_closed_form_continuous(a),
              std::cbrt(4.0), 1e-9);
  a.dim = b.dim = 3;
  EXPECT_NEAR(n_max_closed_form_continuous(b) / n_max_closed_form_continuous(a), 2.0, 1e-9);
}

TEST(Sites, MonotoneInParameters) {
  for (int dim : {2, 3}) {
    ScalingParams base;
    base.dim = dim;
    ScalingParams more_error = base;
    more_error.error_target = 2e-3;
    ScalingParams wider = base;
    wider.k1 = 2.2;
    ScalingParams higher = base;
    higher.n = 120;
    EXPECT_GT(n_max_closed_form_continuous(more_error), n_max_closed_form_continuous(base));
    EXPECT_LT(n_max_closed_form_continuous(wider), n_max_closed_form_continuous(base));
    EXPECT_GT(n_max_closed_form_continuous(higher), n_max_closed_form_continuous(base));
  }
}

TEST(Ensemble, DiameterAndReport) {
  EXPECT_NEAR(ensemble_diameter(100, 0.5, {0.7, Unit::kMicrometer}).in(Unit::kMicrometer),
              5.079, 1e-3);
  const ArchitectureReport r = architecture_report({}, {});
  EXPECT_EQ(r.n_sites, 17);
  EXPECT_EQ(r.qubits_total, 1020);
  EXPECT_NEAR(r.r_max.in(Unit::kMicrometer), 24.393, 1e-3);
  EXPECT_NEAR(r.array_side.value, r.r_max.value, 0.0);
  EXPECT_NEAR(r.k1_eff, 5.3e-6 / (c::kBohrRadius * 1e4), 1e-12);
  EXPECT_NEAR(r.tau.in(Unit::kMicrosecond), 540.0, 1e-9);
}

TEST(Ensemble, Validation) {
  EnsembleParams e;
  e.atoms = 59;
  EXPECT_THROW(architecture_report({}, e), std::invalid_argument);
  ScalingParams s;
  s.n = 100.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.dim = 4;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.error_target = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  try {
    ScalingParams bad;
    bad.k1 = 0.5;
    bad.validate();
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_NE(std::string(ex.what()).find("k1"), std::string::npos);
  }
}

TEST(Budget, LogicalQubits) {
  EXPECT_EQ(logical_budget(60, 7), 8);
  EXPECT_EQ(logical_budget(50, 10), 5);
  EXPECT_EQ(logical_budget(1020, 7), 145);
  EXPECT_THROW(logical_budget(60, 0), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "hoqc/constants.hpp"
#include "hoqc/schedule.hpp"

using namespace hoqc;

namespace {

const RegisterMap& kMap = canonical_register_map();
const HyperfineConfig kHo{};

// Breadth-first hop distance inside the ground multiplet, written against the
// raw hop limits rather than the library's router.
int hop_distance(HyperfineState from, HyperfineState to, const std::set<HyperfineState>& blocked) {
  std::map<HyperfineState, int> dist{{from, 0}};
  std::queue<HyperfineState> q;
  q.push(from);
  while (!q.empty()) {
    const HyperfineState s = q.front();
    q.pop();
    if (s == to) return dist[s];
    for (int f = 4; f <= 11; ++f) {
      if (f == s.f || std::abs(f - s.f) > 2) continue;
      for (int m = s.m - 2; m <= s.m + 2; ++m) {
        const HyperfineState n{f, m};
        if (std::abs(m) > f || dist.count(n) || (blocked.count(n) && n != to)) continue;
        dist[n] = dist[s] + 1;
        q.push(n);
      }
    }
  }
  return -1;
}

std::size_t raman_steps_for_bit(const PulseSchedule& s, int bit) {
  std::size_t n = 0;
  for (const PulseStep& p : s.steps) n += (p.bit == bit && p.kind == StepKind::kRamanTransfer) ? 1 : 0;
  return n;
}

}  // namespace

TEST(Hops, RuleLimits) {
  const Sublevel a = ground({10, 10});
  EXPECT_TRUE(raman_hop_allowed(a, ground({9, 8})));
  EXPECT_TRUE(raman_hop_allowed(a, ground({8, 8})));
  EXPECT_FALSE(raman_hop_allowed(a, ground({10, 8})));  // dF = 0
  EXPECT_FALSE(raman_hop_allowed(a, ground({7, 7})));   // dF = 3
  EXPECT_FALSE(raman_hop_allowed(a, ground({9, 7})));   // dm = 3
  EXPECT_FALSE(raman_hop_allowed(a, metastable(9, 9)));
  HopRule loose;
  loose.allow_zero_df = true;
  EXPECT_TRUE(raman_hop_allowed(a, ground({10, 8}), loose));
}

TEST(Route, SevenStepsToFirstBit) {
  const auto path = raman_route(ground({10, 10}), ground({4, -4}), {ground(kMap.reservoir)});
  ASSERT_EQ(path.size(), 8u);
  // Lower bound: |dm| = 14 at <= 2 per hop.
  EXPECT_EQ(path.size() - 1, 7u);
  EXPECT_EQ(hop_distance({10, 10}, {4, -4}, {kMap.reservoir}), 7);
  for (std::size_t k = 1; k < path.size(); ++k) {
    EXPECT_TRUE(raman_hop_allowed(path[k - 1], path[k]));
    EXPECT_NE(path[k], ground(kMap.reservoir));
  }
  EXPECT_EQ(path.front(), ground({10, 10}));
  EXPECT_EQ(path.back(), ground({4, -4}));
}

TEST(Route, Deterministic) {
  const auto a = raman_route(ground({10, 10}), ground({6, 0}));
  const auto b = raman_route(ground({10, 10}), ground({6, 0}));
  EXPECT_EQ(a, b);
}

TEST(Route, Errors) {
  EXPECT_THROW(raman_route(ground({10, 10}), metastable(9, 9)), RouteError);
  EXPECT_THROW(raman_route(ground({10, 10}), ground({3, 0})), RouteError);
  // Wall off every neighbour of the start.
  std::set<Sublevel> wall;
  for (int f = 8; f <= 11; ++f)
    for (int m = 8; m <= 11; ++m)
      if (std::abs(m) <= f && !(f == 10 && m == 10)) wall.insert(ground({f, m}));
  EXPECT_THROW(raman_route(ground({10, 10}), ground({4, -4}), wall), RouteError);
  EXPECT_EQ(raman_route(ground({4, 0}), ground({4, 0})).size(), 1u);
}

TEST(Init, StepCountsMatchIndependentDistance) {
  const int n = 60;
  const PulseSchedule s = init_schedule(kMap, n);
  EXPECT_EQ(s.count(StepKind::kBlockadePrep), static_cast<std::size_t>(n));
  EXPECT_EQ(raman_steps_for_bit(s, 1), 7u);
  EXPECT_EQ(raman_steps_for_bit(s, 60), 0u);
  std::set<HyperfineState> blocked{kMap.reservoir};
  for (int b = 1; b <= n; ++b) {
    const int d = hop_distance(kMap.qubit(60).zero, kMap.qubit(b).zero, blocked);
    EXPECT_EQ(static_cast<int>(raman_steps_for_bit(s, b)), d) << "bit " << b;
    blocked.insert(kMap.qubit(b).zero);
  }
  EXPECT_NO_THROW(validate_route(s));
  EXPECT_THROW(init_schedule(kMap, 61), std::out_of_range);
  EXPECT_THROW(init_schedule(kMap, 0), std::out_of_range);
}

TEST(Init, WalksEndOnZeroStates) {
  const PulseSchedule s = init_schedule(kMap, 12);
  std::map<int, Sublevel> last;
  for (const PulseStep& p : s.steps) last[p.bit] = p.target;
  for (int b = 1; b <= 12; ++b) EXPECT_EQ(last[b], ground(kMap.qubit(b).zero));
  for (const PulseStep& p : s.steps) {
    EXPECT_GT(p.duration_s, 0.0);
    EXPECT_NE(p.source, p.target);
    ASSERT_TRUE(p.frequency_hz.has_value());
  }
}

TEST(Durations, PiPulsesAndBlockade) {
  const PulseSchedule s = init_schedule(kMap, 1);
  EXPECT_NEAR(s.steps[0].duration_s, 1.0 / (2.0 * 100e3) / 10.0, 1e-15);
  EXPECT_NEAR(s.steps[1].duration_s, 5e-6, 1e-15);
}

TEST(Rotation, SingleStepOnBit) {
  const PulseSchedule s = rotation_schedule(kMap, 60, 60);
  ASSERT_EQ(s.steps.size(), 1u);
  EXPECT_EQ(s.steps[0].source, ground({10, 10}));
  EXPECT_EQ(s.steps[0].target, ground({11, 10}));
  // Frequency = hyperfine gap + differential Zeeman shift.
  const double expect = (hyperfine_energy(kHo, 11).value - hyperfine_energy(kHo, 10).value +
                         qubit_differential_shift(kMap, 60, kHo, {50.0, Unit::kGauss}).value) *
                        1e6;
  EXPECT_NEAR(*s.steps[0].frequency_hz / expect, 1.0, 1e-12);
  EXPECT_THROW(rotation_schedule(kMap, 5, 6), std::out_of_range);
}

TEST(Measurement, ShelveThenFluoresce) {
  const PulseSchedule s = measurement_schedule(kMap, 10, 3);
  ASSERT_EQ(s.steps.size(), 2u);
  EXPECT_EQ(s.steps[0].kind, StepKind::kShelve);
  EXPECT_EQ(s.steps[0].source, ground(kMap.qubit(3).one));
  EXPECT_EQ(s.steps[0].target.multiplet, Multiplet::kMetastable);
  EXPECT_EQ(s.steps[1].kind, StepKind::kFluoresce);
  EXPECT_FALSE(s.steps[0].frequency_hz.has_value());
  EXPECT_NO_THROW(validate_route(s));
}

TEST(ShelfPartner, WithinTwoPhotonReach) {
  for (const QubitAssignment& q : kMap.qubits) {
    for (HyperfineState h : {q.zero, q.one}) {
      const Sublevel p = shelf_partner(h);
      EXPECT_EQ(p.multiplet, Multiplet::kMetastable);
      EXPECT_LE(std::abs(p.f - h.f), 2);
      EXPECT_LE(std::abs(p.m - h.m), 2);
      EXPECT_LE(std::abs(p.m), p.f);
      EXPECT_GE(p.f, 2);
      EXPECT_LE(p.f, 9);
    }
  }
}

TEST(SwapDown, StructureAndEndpoints) {
  for (int n : {1, 3, 6, 20}) {
    for (int hole = 1; hole <= n; ++hole) {
      const PulseSchedule s = swap_down_schedule(kMap, n, hole);
      EXPECT_NO_THROW(validate_route(s));
      EXPECT_EQ(s.count(StepKind::kBlockadePrep), 1u);
      EXPECT_EQ(s.steps.back().target, ground(kMap.qubit(n).zero));
      // Each shifted bit contributes two walks ending on the slot below.
      std::map<int, std::vector<Sublevel>> ends;
      for (const PulseStep& p : s.steps)
        if (p.kind == StepKind::kRamanTransfer && p.bit != n) ends[p.bit].push_back(p.target);
      for (int j = hole + 1; j <= n; ++j) {
        if (j == n) continue;
        const auto& e = ends[j];
        EXPECT_TRUE(std::find(e.begin(), e.end(), ground(kMap.qubit(j - 1).one)) != e.end());
        EXPECT_TRUE(std::find(e.begin(), e.end(), ground(kMap.qubit(j - 1).zero)) != e.end());
      }
    }
  }
  const PulseSchedule top = swap_down_schedule(kMap, 4, 4);
  for (const PulseStep& p : top.steps) EXPECT_EQ(p.bit, 4);
}

TEST(ShelfRestore, RouteThroughMetastable) {
  for (int slot : {1, 5, 9, 17, 20}) {
    const PulseSchedule s = shelf_restore_schedule(kMap, 20, slot);
    EXPECT_NO_THROW(validate_route(s));
    bool into_shelf = false;
    for (const PulseStep& p : s.steps) {
      if (p.kind == StepKind::kBlockadePrep) {
        EXPECT_EQ(p.source, ground(kMap.reservoir));
        EXPECT_EQ(p.target, metastable(9, 9));
        into_shelf = true;
      }
      if (p.source.multiplet != p.target.multiplet) {
        EXPECT_LE(std::abs(p.source.f - p.target.f), 2);
        EXPECT_LE(std::abs(p.source.m - p.target.m), 2);
      }
    }
    EXPECT_TRUE(into_shelf);
    EXPECT_EQ(s.steps.back().target, ground(kMap.qubit(slot).zero));
    EXPECT_EQ(s.steps.back().source.multiplet, Multiplet::kMetastable);
  }
}

TEST(Validate, RejectsBadSteps) {
  PulseSchedule s;
  s.register_size = 1;
  s.steps.push_back({StepKind::kRamanTransfer, ground({10, 10}), ground({10, 8}), 1e-6, {}, 1, ""});
  EXPECT_THROW(validate_route(s), RouteError);
  s.steps[0].target = ground({7, 10});
  EXPECT_THROW(validate_route(s), RouteError);
  s.steps[0] = {StepKind::kShelve, ground({11, 10}), metastable(9, 7), 1e-6, {}, 1, ""};
  EXPECT_THROW(validate_route(s), RouteError);
  s.steps[0] = {StepKind::kRamanTransfer, ground({10, 10}), ground({10, 10}), 1e-6, {}, 1, ""};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.steps[0] = {StepKind::kRamanTransfer, ground({10, 10}), ground({9, 9}), 0.0, {}, 1, ""};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Budget, RotationSpectatorAtFiftyGauss) {
  const PulseSchedule s = rotation_schedule(kMap, 60, 60);
  const ErrorBudget b = error_budget(s, kHo, {50.0, Unit::kGauss}, {100.0, Unit::kKilohertz});
  ASSERT_EQ(b.steps.size(), 1u);
  const double detuning = rotation_selectivity(kHo, 11, {50.0, Unit::kGauss}).in(Unit::kHertz);
  EXPECT_NEAR(*b.steps[0].spectator_detuning_hz / detuning, 1.0, 1e-12);
  EXPECT_NEAR(b.steps[0].spectator_error, 1.0 / (1.0 + std::pow(detuning / 1e5, 2)), 1e-15);
  EXPECT_GT(b.worst_spectator_error, 0.5e-3);
  EXPECT_LT(b.worst_spectator_error, 2e-3);
}

TEST(Budget, ShelvingSpectatorAtTwoGauss) {
  PulseSchedule all;
  all.register_size = 60;
  for (int i = 1; i <= 60; ++i) all.append(measurement_schedule(kMap, 60, i));
  const ErrorBudget b = error_budget(all, kHo, {2.2, Unit::kGauss}, {100.0, Unit::kKilohertz});
  EXPECT_LE(b.worst_spectator_error, 1.6e-3);
  EXPECT_GT(b.worst_spectator_error, 1e-4);
  int below = 0, shelves = 0;
  for (const StepBudget& sb : b.steps) {
    if (sb.kind == StepKind::kFluoresce) {
      EXPECT_FALSE(sb.spectator_detuning_hz.has_value());
      EXPECT_EQ(sb.spectator_error, 0.0);
      continue;
    }
    ++shelves;
    below += sb.spectator_error < b.worst_spectator_error ? 1 : 0;
  }
  EXPECT_GT(below, shelves / 2);
}

TEST(Budget, DoublingFieldReducesEveryError) {
  PulseSchedule s = init_schedule(kMap, 8);
  s.append(swap_down_schedule(kMap, 8, 3));
  s.append(shelf_restore_schedule(kMap, 8, 2));
  s.append(measurement_schedule(kMap, 8, 5));
  const ErrorBudget a = error_budget(s, kHo, {20.0, Unit::kGauss}, {100.0, Unit::kKilohertz});
  const ErrorBudget b = error_budget(s, kHo, {40.0, Unit::kGauss}, {100.0, Unit::kKilohertz});
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    if (a.steps[k].spectator_error > 0.0 && a.steps[k].spectator_error < 1.0) {
      EXPECT_LT(b.steps[k].spectator_error, a.steps[k].spectator_error);
    }
  }
  EXPECT_LT(b.total_spectator_error, a.total_spectator_error);
}

TEST(Budget, DephasingTotals) {
  const PulseSchedule s = swap_down_schedule(kMap, 9, 1);
  const ErrorBudget b = error_budget(s, kHo, {50.0, Unit::kGauss}, {100.0, Unit::kKilohertz});
  double cycles = 0.0;
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    EXPECT_NEAR(b.steps[k].differential_shift_hz, 134.36e6, 0.05e6);
    cycles += b.steps[k].differential_shift_hz * s.steps[k].duration_s;
  }
  EXPECT_NEAR(b.total_dephasing_cycles / cycles, 1.0, 1e-12);
  EXPECT_NEAR(b.stability_requirement, 1e-3 / cycles, 1e-18);
  EXPECT_THROW(error_budget(s, kHo, {0.0, Unit::kGauss}, {100.0, Unit::kKilohertz}),
               std::invalid_argument);
}

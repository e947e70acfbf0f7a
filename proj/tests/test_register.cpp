#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hoqc/constants.hpp"
#include "hoqc/register.hpp"

using namespace hoqc;
using C = std::complex<double>;
using Vec = RegisterState::Vector;
using Mat = Eigen::MatrixXcd;

namespace {

constexpr double kPi = constants::kPi;

Vec random_state(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  Vec v(std::int64_t{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = C(d(g), d(g));
  return v / v.norm();
}

RegisterState with_amplitudes(int n, const Vec& v, long budget = 100) {
  RegisterState s = new_register(n, budget);
  s.amplitudes = v;
  return s;
}

// Permutation matrix exchanging slots a and b (1-based).
Mat swap_matrix(int n, int a, int b) {
  const std::int64_t dim = std::int64_t{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    const std::int64_t ba = (x >> (a - 1)) & 1;
    const std::int64_t bb = (x >> (b - 1)) & 1;
    std::int64_t y = x & ~((std::int64_t{1} << (a - 1)) | (std::int64_t{1} << (b - 1)));
    y |= (ba << (b - 1)) | (bb << (a - 1));
    m(y, x) = 1.0;
  }
  return m;
}

Mat flip_matrix(int n, int slot) {
  const std::int64_t dim = std::int64_t{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) m(x ^ (std::int64_t{1} << (slot - 1)), x) = 1.0;
  return m;
}

// Swap-down as a gate product: bubble the emptied slot to the top with
// adjacent SWAPs, then flip the top slot back to |0>.
Mat swap_down_oracle(int n, int hole) {
  Mat m = Mat::Identity(std::int64_t{1} << n, std::int64_t{1} << n);
  for (int s = hole; s < n; ++s) m = swap_matrix(n, s, s + 1) * m;
  return flip_matrix(n, n) * m;
}

// Measures `bit`, trying successive seeds until outcome 1.
MeasureResult<double> measure_one(const RegisterState& s, int bit, std::uint64_t& seed) {
  for (int tries = 0; tries < 10000; ++tries) {
    auto r = measure(s, bit, seed++);
    if (r.outcome == 1) return r;
  }
  throw std::runtime_error("no outcome 1");
}

}  // namespace

TEST(NewRegister, FreshState) {
  const RegisterState s = new_register(3, 100);
  EXPECT_EQ(s.amplitudes.size(), 8);
  EXPECT_EQ(s.amplitudes(0), C(1.0));
  EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-15);
  EXPECT_EQ(s.relabel, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(s.shelf.has_value());
  EXPECT_NO_THROW(check_invariants(s));
  EXPECT_THROW(new_register(60, 59), std::invalid_argument);
  EXPECT_THROW(new_register(21, 100), std::invalid_argument);
  EXPECT_THROW(new_register(0, 100), std::invalid_argument);
  EXPECT_THROW(new_register(3, 2), std::invalid_argument);
}

TEST(Rotation, IdentityFlipAndGroup) {
  const RegisterState s = with_amplitudes(3, random_state(3, 1));
  EXPECT_LT((apply_rotation(s, 2, 0.0, 0.7).amplitudes - s.amplitudes).norm(), 1e-14);

  const RegisterState flipped = apply_rotation(new_register(2, 10), 1, kPi, 0.3);
  EXPECT_NEAR(std::norm(flipped.amplitudes(1)), 1.0, 1e-14);
  EXPECT_NEAR(probability_one(flipped, 1), 1.0, 1e-14);
  EXPECT_NEAR(probability_one(flipped, 2), 0.0, 1e-14);

  for (double theta : {0.3, 1.1, kPi, 4.0}) {
    const auto twice = apply_rotation(apply_rotation(s, 3, theta / 2, 0.4), 3, theta / 2, 0.4);
    const auto once = apply_rotation(s, 3, theta, 0.4);
    EXPECT_LT((twice.amplitudes - once.amplitudes).norm(), 1e-12);
  }
  EXPECT_THROW(apply_rotation(s, 4, 1.0, 0.0), std::out_of_range);
  EXPECT_THROW(apply_rotation(s, 0, 1.0, 0.0), std::out_of_range);
}

TEST(Rotation, MatrixIsUnitary) {
  for (double th : {0.0, 0.5, 2.0, 5.0}) {
    for (double ph : {0.0, 1.0, -2.0}) {
      const auto r = rotation_matrix(th, ph);
      EXPECT_LT((r.adjoint() * r - Eigen::Matrix2cd::Identity()).norm(), 1e-14);
    }
  }
}

TEST(Rotation, DisjointBitsCommuteAndNormIsPreserved) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RegisterState s = with_amplitudes(4, random_state(4, seed));
    const auto ab = apply_rotation(apply_rotation(s, 1, 0.7, 0.2), 3, 1.9, -0.5);
    const auto ba = apply_rotation(apply_rotation(s, 3, 1.9, -0.5), 1, 0.7, 0.2);
    EXPECT_LT((ab.amplitudes - ba.amplitudes).norm(), 1e-12);
    EXPECT_NEAR(ab.amplitudes.norm(), 1.0, 1e-12);
  }
}

TEST(Measure, DeterministicOnBasisStates) {
  const RegisterState s = new_register(3, 10);
  for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_EQ(measure(s, 2, seed).outcome, 0);
  const RegisterState one = apply_rotation(s, 2, kPi, 0.0);
  EXPECT_EQ(measure(one, 2, 5).outcome, 1);
  EXPECT_THROW(measure(s, 4, 0), std::out_of_range);
}

TEST(Measure, BornRuleFrequency) {
  const RegisterState plus = apply_rotation(new_register(1, 10), 1, kPi / 2, 0.0);
  const int shots = 10000;
  int ones = 0;
  for (int k = 0; k < shots; ++k) ones += measure(plus, 1, static_cast<std::uint64_t>(k)).outcome;
  const double p = static_cast<double>(ones) / shots;
  EXPECT_NEAR(p, 0.5, 3.0 * std::sqrt(0.25 / shots));
}

TEST(Measure, ProjectsAndIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RegisterState s = with_amplitudes(3, random_state(3, seed + 100));
    const auto r = measure(s, 2, seed);
    EXPECT_NEAR(r.state.amplitudes.norm(), 1.0, 1e-12);
    EXPECT_NEAR(probability_one(r.state, 2), r.outcome, 1e-12);
    for (std::uint64_t again = 0; again < 5; ++again) {
      EXPECT_EQ(measure(r.state, 2, again).outcome, r.outcome);
    }
    EXPECT_EQ(r.state.shelf.has_value(), r.outcome == 1);
  }
}

TEST(Measure, ShelfBlocksOtherBits) {
  const RegisterState s = apply_rotation(new_register(2, 10), 1, kPi, 0.0);
  const auto r = measure(s, 1, 0);
  ASSERT_EQ(r.outcome, 1);
  EXPECT_THROW(measure(r.state, 2, 0), std::logic_error);
}

TEST(SwapDown, ExhaustivePermutationOracle) {
  for (int n = 1; n <= 6; ++n) {
    const std::int64_t dim = std::int64_t{1} << n;
    for (int hole = 1; hole <= n; ++hole) {
      const Mat oracle = swap_down_oracle(n, hole);
      for (std::int64_t x = 0; x < dim; ++x) {
        if (((x >> (hole - 1)) & 1) == 0) continue;
        Vec v = Vec::Zero(dim);
        v(x) = 1.0;
        auto m = measure(with_amplitudes(n, v), hole, 0);
        ASSERT_EQ(m.outcome, 1);
        const auto r = reset_swap_down(m.state, hole);
        EXPECT_LT((r.state.amplitudes - oracle * v).norm(), 1e-15) << "n=" << n << " hole=" << hole << " x=" << x;
      }
    }
  }
}

TEST(SwapDown, RandomStatesMatchOracle) {
  std::uint64_t seed = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int hole = 1; hole <= n; ++hole) {
      const auto m = measure_one(with_amplitudes(n, random_state(n, 7 * n + hole)), hole, seed);
      const auto r = reset_swap_down(m.state, hole);
      EXPECT_LT((r.state.amplitudes - swap_down_oracle(n, hole) * m.state.amplitudes).norm(), 1e-12);
      EXPECT_NO_THROW(check_invariants(r.state));
    }
  }
}

TEST(SwapDown, ThreeQubitRelabel) {
  // |b3 b2 b1> = |0 1 1>: bit 1 measured as 1, bit 2 holds 1, bit 3 holds 0.
  Vec v = Vec::Zero(8);
  v(0b011) = 1.0;
  auto m = measure(with_amplitudes(3, v), 1, 0);
  ASSERT_EQ(m.outcome, 1);
  const auto r = reset_swap_down(m.state, 1);
  EXPECT_EQ(r.state.relabel, (std::vector<int>{3, 1, 2}));
  EXPECT_NEAR(std::norm(r.state.amplitudes(0b001)), 1.0, 1e-15);  // old bit 2 now in slot 1
  EXPECT_NEAR(probability_one(r.state, 2), 1.0, 1e-15);
  EXPECT_NEAR(probability_one(r.state, 1), 0.0, 1e-15);
  EXPECT_FALSE(r.state.shelf.has_value());
  EXPECT_EQ(r.state.atom_budget, 99);

  const auto a = reset_swap_down(m.state, 1, RelabelPolicy::kAppend);
  EXPECT_EQ(a.state.relabel, (std::vector<int>{1, 2, 3}));
  EXPECT_NEAR(probability_one(a.state, 1), 1.0, 1e-15);
}

TEST(SwapDown, TopBitIsPureReinitialization) {
  std::uint64_t seed = 0;
  const auto m = measure_one(with_amplitudes(4, random_state(4, 3)), 4, seed);
  const auto r = reset_swap_down(m.state, 4);
  EXPECT_EQ(r.state.relabel, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(r.schedule.count(StepKind::kBlockadePrep), 1u);
  for (const PulseStep& p : r.schedule.steps) EXPECT_EQ(p.bit, 4);
}

TEST(SwapDown, UnshiftedExpectationsPreserved) {
  std::uint64_t seed = 11;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5;
    const int hole = 1 + trial % n;
    const auto m = measure_one(with_amplitudes(n, random_state(n, 500 + trial)), hole, seed);
    const auto r = reset_swap_down(m.state, hole);
    for (int k = 1; k <= n; ++k) {
      if (k == hole) continue;
      EXPECT_NEAR(probability_one(r.state, k), probability_one(m.state, k), 1e-12);
    }
    EXPECT_NEAR(probability_one(r.state, hole), 0.0, 1e-12);
  }
}

TEST(Reset, RequiresPendingMeasurement) {
  const RegisterState s = new_register(3, 10);
  EXPECT_THROW(reset_swap_down(s, 1), std::logic_error);
  EXPECT_THROW(reset_shelf_restore(s, 1), std::logic_error);
  const auto m = measure(apply_rotation(s, 2, kPi, 0.0), 2, 0);
  EXPECT_THROW(reset_shelf_restore(m.state, 1), std::logic_error);
}

TEST(ShelfRestore, InPlaceReset) {
  std::uint64_t seed = 0;
  for (int bit = 1; bit <= 4; ++bit) {
    const auto m = measure_one(with_amplitudes(4, random_state(4, 40 + bit)), bit, seed);
    const auto r = reset_shelf_restore(m.state, bit);
    EXPECT_EQ(r.state.relabel, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_NEAR(probability_one(r.state, bit), 0.0, 1e-15);
    for (int k = 1; k <= 4; ++k) {
      if (k != bit) EXPECT_NEAR(probability_one(r.state, k), probability_one(m.state, k), 1e-12);
    }
    EXPECT_NO_THROW(validate_route(r.schedule));
    EXPECT_EQ(r.schedule.steps.back().target, ground(canonical_register_map().qubit(bit).zero));
    EXPECT_NO_THROW(check_invariants(r.state));
  }
}

TEST(Reset, StrategiesAreLogicallyEquivalent) {
  std::uint64_t seed = 1000;
  for (int trial = 0; trial < 100; ++trial) {
    RegisterState s = with_amplitudes(4, random_state(4, 9000 + trial));
    const int bit = 1 + trial % 4;
    const auto m = measure_one(s, bit, seed);
    const auto swap = reset_swap_down(m.state, bit);
    const auto restore = reset_shelf_restore(m.state, bit);
    EXPECT_LT((logical_amplitudes(swap.state) - logical_amplitudes(restore.state)).norm(), 1e-12);
    // Subsequent logical operations stay equivalent.
    const auto a = apply_rotation(swap.state, bit, 0.9, 0.2);
    const auto b = apply_rotation(restore.state, bit, 0.9, 0.2);
    EXPECT_LT((logical_amplitudes(a) - logical_amplitudes(b)).norm(), 1e-12);
  }
}

TEST(Budget, DecrementsAndExhausts) {
  RegisterState s = apply_rotation(new_register(3, 4), 1, kPi, 0.0);
  auto m = measure(s, 1, 0);
  auto r = reset_shelf_restore(m.state, 1);
  EXPECT_EQ(r.state.atom_budget, 3);
  EXPECT_EQ(r.state.reinitializations, 1);
  m = measure(apply_rotation(r.state, 1, kPi, 0.0), 1, 0);
  EXPECT_THROW(reset_swap_down(m.state, 1), std::runtime_error);

  RegisterState big = new_register(3, 50);
  long last = big.atom_budget;
  for (int k = 0; k < 10; ++k) {
    auto mm = measure(apply_rotation(big, 1 + k % 3, kPi, 0.0), 1 + k % 3, 0);
    big = (k % 2 ? reset_swap_down(mm.state, 1 + k % 3) : reset_shelf_restore(mm.state, 1 + k % 3)).state;
    EXPECT_EQ(big.atom_budget, last - 1);
    last = big.atom_budget;
  }
  EXPECT_EQ(big.reinitializations, 10);
}

TEST(Invariants, DetectBrokenState) {
  RegisterState s = new_register(2, 10);
  s.relabel = {1, 1};
  EXPECT_THROW(check_invariants(s), std::logic_error);
  s = new_register(2, 10);
  s.amplitudes(1) = 1.0;
  EXPECT_THROW(check_invariants(s), std::logic_error);
}

TEST(Scalar, SinglePrecisionRegister) {
  auto s = new_register<float>(3, 10);
  s = apply_rotation(s, 2, 1.3f, 0.4f);
  EXPECT_NEAR(s.amplitudes.norm(), 1.0f, 1e-6f);
  const auto m = measure(s, 2, 3);
  EXPECT_NEAR(probability_one(m.state, 2), static_cast<float>(m.outcome), 1e-6f);
}

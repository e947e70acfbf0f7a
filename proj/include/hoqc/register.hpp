#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hoqc/rng.hpp"
#include "hoqc/schedule.hpp"

// Logical state-vector model of the collectively encoded register. Amplitudes
// are indexed by physical slot (slot s is bit s-1 of the index); `relabel`
// maps logical bit k to its slot. Gates are ideal unitaries.

namespace hoqc {

inline constexpr int kMaxRegisterQubits = 20;

struct ShelfRecord {
  int logical = 0;
  int slot = 0;
};

template <typename Scalar>
struct BasicRegisterState {
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  int n_qubits = 0;
  Vector amplitudes;
  long atom_budget = 0;
  std::vector<int> relabel;  // relabel[k - 1] = physical slot of logical bit k
  std::optional<ShelfRecord> shelf;
  long reinitializations = 0;

  int slot_of(int logical) const {
    if (logical < 1 || logical > n_qubits) {
      throw std::out_of_range("register: bit " + std::to_string(logical) + " outside 1.." +
                              std::to_string(n_qubits));
    }
    return relabel[static_cast<std::size_t>(logical - 1)];
  }
};

using RegisterState = BasicRegisterState<double>;

enum class RelabelPolicy {
  kPreserveLogical,  // measured logical index now names the fresh top slot
  kAppend,           // higher logical indices close the gap; fresh bit is logical N
};

template <typename Scalar>
struct MeasureResult {
  int outcome = 0;
  BasicRegisterState<Scalar> state;
};

template <typename Scalar>
struct ResetResult {
  BasicRegisterState<Scalar> state;
  PulseSchedule schedule;
};

template <typename Scalar = double>
BasicRegisterState<Scalar> new_register(int n_qubits, long atom_budget) {
  if (n_qubits < 1 || n_qubits > kMaxRegisterQubits) {
    throw std::invalid_argument("new_register: n_qubits must be in 1.." +
                                std::to_string(kMaxRegisterQubits));
  }
  if (atom_budget < n_qubits) {
    throw std::invalid_argument("new_register: atom budget " + std::to_string(atom_budget) +
                                " below n_qubits " + std::to_string(n_qubits));
  }
  BasicRegisterState<Scalar> s;
  s.n_qubits = n_qubits;
  s.amplitudes = BasicRegisterState<Scalar>::Vector::Zero(std::int64_t{1} << n_qubits);
  s.amplitudes(0) = Scalar(1);
  s.atom_budget = atom_budget;
  for (int k = 1; k <= n_qubits; ++k) s.relabel.push_back(k);
  return s;
}

/// R(theta, phi) = [[cos t/2, -i e^{-i phi} sin t/2], [-i e^{i phi} sin t/2, cos t/2]].
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> rotation_matrix(Scalar theta, Scalar phi) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  const C mi(0, -1);
  Eigen::Matrix<C, 2, 2> r;
  r << C(c), mi * std::polar(Scalar(1), -phi) * s, mi * std::polar(Scalar(1), phi) * s, C(c);
  return r;
}

/// Applies a 2x2 unitary to physical slot `slot`.
template <typename Scalar>
void apply_slot_unitary(BasicRegisterState<Scalar>& s, int slot,
                        const Eigen::Matrix<std::complex<Scalar>, 2, 2>& u) {
  const std::int64_t mask = std::int64_t{1} << (slot - 1);
  const std::int64_t dim = s.amplitudes.size();
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    if ((idx & mask) != 0) continue;
    const auto a0 = s.amplitudes(idx);
    const auto a1 = s.amplitudes(idx | mask);
    s.amplitudes(idx) = u(0, 0) * a0 + u(0, 1) * a1;
    s.amplitudes(idx | mask) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

template <typename Scalar>
BasicRegisterState<Scalar> apply_rotation(BasicRegisterState<Scalar> s, int logical,
                                          Scalar theta, Scalar phi) {
  apply_slot_unitary(s, s.slot_of(logical), rotation_matrix(theta, phi));
  return s;
}

template <typename Scalar>
Scalar probability_one(const BasicRegisterState<Scalar>& s, int logical) {
  const std::int64_t mask = std::int64_t{1} << (s.slot_of(logical) - 1);
  Scalar p = 0;
  for (std::int64_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    if ((idx & mask) != 0) p += std::norm(s.amplitudes(idx));
  }
  return p;
}

/// Projective readout of logical bit `logical`. The draw is the first
/// uniform of stream 0 of `seed`; outcome 1 if it falls below P(1). A result
/// of 1 leaves the atom shelved in J = 11/2 until a reset.
template <typename Scalar>
MeasureResult<Scalar> measure(BasicRegisterState<Scalar> s, int logical, std::uint64_t seed) {
  const int slot = s.slot_of(logical);
  if (s.shelf && s.shelf->logical != logical) {
    throw std::logic_error("measure: bit " + std::to_string(s.shelf->logical) +
                           " is still shelved; reset it first");
  }
  const Scalar p1 = probability_one(s, logical);
  auto engine = rng::make_stream(seed, 0);
  const int outcome = rng::uniform01(engine) < static_cast<double>(p1) ? 1 : 0;
  const Scalar p = outcome == 1 ? p1 : Scalar(1) - p1;
  if (!(p > Scalar(0))) throw std::logic_error("measure: drew a zero-probability outcome");

  const std::int64_t mask = std::int64_t{1} << (slot - 1);
  const Scalar norm = std::sqrt(p);
  for (std::int64_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    const bool one = (idx & mask) != 0;
    s.amplitudes(idx) = (one == (outcome == 1)) ? s.amplitudes(idx) / norm
                                                : std::complex<Scalar>(0);
  }
  if (outcome == 1) s.shelf = ShelfRecord{logical, slot};
  return {outcome, std::move(s)};
}

namespace detail {

template <typename Scalar>
void consume_atom(BasicRegisterState<Scalar>& s) {
  if (s.atom_budget - 1 < s.n_qubits) {
    throw std::runtime_error("reset: atom budget exhausted (" + std::to_string(s.atom_budget) +
                             " left for " + std::to_string(s.n_qubits) + " bits)");
  }
  --s.atom_budget;
  ++s.reinitializations;
}

template <typename Scalar>
const ShelfRecord& pending(const BasicRegisterState<Scalar>& s, int logical) {
  if (!s.shelf || s.shelf->logical != logical) {
    throw std::logic_error("reset: no pending outcome-1 measurement on bit " +
                           std::to_string(logical));
  }
  return *s.shelf;
}

}  // namespace detail

/// Fills the hole left at the measured slot by moving every higher slot down
/// one and reinitializing the top slot to |0>.
template <typename Scalar>
ResetResult<Scalar> reset_swap_down(BasicRegisterState<Scalar> s, int logical,
                                    RelabelPolicy policy = RelabelPolicy::kPreserveLogical,
                                    const ScheduleTiming& timing = {}) {
  const int hole = detail::pending(s, logical).slot;
  const int n = s.n_qubits;
  detail::consume_atom(s);
  PulseSchedule schedule = swap_down_schedule(canonical_register_map(), n, hole, timing);

  const std::int64_t low = (std::int64_t{1} << (hole - 1)) - 1;
  const std::int64_t dim = s.amplitudes.size();
  typename BasicRegisterState<Scalar>::Vector out =
      BasicRegisterState<Scalar>::Vector::Zero(dim);
  for (std::int64_t idx = 0; idx < dim / 2; ++idx) {
    const std::int64_t src = (idx & low) | (std::int64_t{1} << (hole - 1)) | ((idx & ~low) << 1);
    out(idx) = s.amplitudes(src);
  }
  s.amplitudes = std::move(out);

  std::vector<int> moved(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const int slot = s.relabel[static_cast<std::size_t>(k - 1)];
    moved[static_cast<std::size_t>(k - 1)] = slot > hole ? slot - 1 : slot;
  }
  if (policy == RelabelPolicy::kPreserveLogical) {
    moved[static_cast<std::size_t>(logical - 1)] = n;
  } else {
    moved.erase(moved.begin() + (logical - 1));
    moved.push_back(n);
  }
  s.relabel = std::move(moved);
  s.shelf.reset();
  return {std::move(s), std::move(schedule)};
}

/// Returns the measured bit to |0> in place through the J = 11/2 shelf.
template <typename Scalar>
ResetResult<Scalar> reset_shelf_restore(BasicRegisterState<Scalar> s, int logical,
                                        const ScheduleTiming& timing = {}) {
  const int slot = detail::pending(s, logical).slot;
  PulseSchedule schedule = shelf_restore_schedule(canonical_register_map(), s.n_qubits, slot,
                                                  timing);
  detail::consume_atom(s);
  const std::int64_t mask = std::int64_t{1} << (slot - 1);
  for (std::int64_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    if ((idx & mask) != 0) continue;
    s.amplitudes(idx) = s.amplitudes(idx | mask);
    s.amplitudes(idx | mask) = 0;
  }
  s.shelf.reset();
  return {std::move(s), std::move(schedule)};
}

/// Amplitudes re-indexed so that bit k-1 of the index is logical bit k.
template <typename Scalar>
typename BasicRegisterState<Scalar>::Vector logical_amplitudes(
    const BasicRegisterState<Scalar>& s) {
  const std::int64_t dim = s.amplitudes.size();
  typename BasicRegisterState<Scalar>::Vector out(dim);
  for (std::int64_t phys = 0; phys < dim; ++phys) {
    std::int64_t logical = 0;
    for (int k = 1; k <= s.n_qubits; ++k) {
      if ((phys >> (s.relabel[static_cast<std::size_t>(k - 1)] - 1)) & 1) {
        logical |= std::int64_t{1} << (k - 1);
      }
    }
    out(logical) = s.amplitudes(phys);
  }
  return out;
}

/// Throws std::logic_error naming the first broken invariant.
template <typename Scalar>
void check_invariants(const BasicRegisterState<Scalar>& s, Scalar norm_tol = Scalar(1e-12)) {
  if (s.amplitudes.size() != (std::int64_t{1} << s.n_qubits)) {
    throw std::logic_error("register: amplitude vector length mismatch");
  }
  if (std::abs(s.amplitudes.squaredNorm() - Scalar(1)) > norm_tol) {
    throw std::logic_error("register: state not normalized");
  }
  std::vector<bool> seen(static_cast<std::size_t>(s.n_qubits) + 1, false);
  if (static_cast<int>(s.relabel.size()) != s.n_qubits) {
    throw std::logic_error("register: relabel size mismatch");
  }
  for (int slot : s.relabel) {
    if (slot < 1 || slot > s.n_qubits || seen[static_cast<std::size_t>(slot)]) {
      throw std::logic_error("register: relabel is not a permutation");
    }
    seen[static_cast<std::size_t>(slot)] = true;
  }
  if (s.atom_budget < s.n_qubits) throw std::logic_error("register: atom budget below N");
}

}  // namespace hoqc

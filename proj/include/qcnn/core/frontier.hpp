// Copyright 2026 The qcnn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact evaluation of wide, block-structured circuits. Wires enter the
// density matrix in |0><0| at first use and are traced out right after their
// last gate, so memory follows the active width instead of the circuit width.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcnn/core/circuit_plan.hpp"
#include "qcnn/core/kernels.hpp"
#include "qcnn/core/pure_state.hpp"
#include "qcnn/errors.hpp"

namespace qcnn {

inline constexpr std::size_t kDefaultWidthCap = 12;

/// Density matrix over the active wires. Storage is a vector over 2w bits:
/// the high w bits are the row index, the low w bits the column index.
/// Active slot s maps to bit (w - 1 - s) inside a row or column index.
class FrontierState {
 public:
  explicit FrontierState(std::size_t n_wires, std::size_t cap = kDefaultWidthCap)
      : cap_(cap), slot_of_(n_wires, kInactive), rho_{Complex(1, 0)} {}

  std::size_t width() const noexcept { return wire_at_.size(); }
  std::size_t dim() const noexcept { return std::size_t{1} << width(); }
  bool is_active(Wire w) const { return slot_of_.at(w) != kInactive; }
  std::span<const Wire> active_wires() const noexcept { return wire_at_; }

  Complex at(std::size_t row, std::size_t col) const { return rho_[(row << width()) | col]; }

  /// Appends `w` as the newest (least significant) slot in state |0>.
  void allocate(Wire w) {
    if (is_active(w)) throw std::logic_error("wire " + std::to_string(w) + " already active");
    if (width() + 1 > cap_) throw ResourceLimitError(width() + 1, cap_);
    const std::size_t old_w = width(), old_d = dim();
    std::vector<Complex> next(std::size_t{1} << (2 * (old_w + 1)), Complex(0, 0));
    for (std::size_t r = 0; r < old_d; ++r)
      for (std::size_t c = 0; c < old_d; ++c)
        next[((r << 1) << (old_w + 1)) | (c << 1)] = rho_[(r << old_w) | c];
    rho_ = std::move(next);
    slot_of_[w] = old_w;
    wire_at_.push_back(w);
  }

  /// Partial trace over `w`.
  void retire(Wire w) {
    const std::size_t slot = slot_or_throw(w);
    const std::size_t old_w = width();
    const std::size_t new_w = old_w - 1;
    const unsigned pos = static_cast<unsigned>(old_w - 1 - slot);
    const std::size_t new_d = std::size_t{1} << new_w;
    std::vector<Complex> next(new_d * new_d, Complex(0, 0));
    for (std::size_t r = 0; r < new_d; ++r)
      for (std::size_t c = 0; c < new_d; ++c) {
        Complex acc = 0;
        for (std::size_t a = 0; a < 2; ++a)
          acc += rho_[(insert_bit(r, pos, a) << old_w) | insert_bit(c, pos, a)];
        next[(r << new_w) | c] = acc;
      }
    rho_ = std::move(next);
    wire_at_.erase(wire_at_.begin() + static_cast<std::ptrdiff_t>(slot));
    slot_of_[w] = kInactive;
    for (std::size_t s = slot; s < wire_at_.size(); ++s) slot_of_[wire_at_[s]] = s;
  }

  /// rho -> U rho U^dagger. Inactive wires are allocated first.
  void apply(const Gate& g) {
    const std::size_t arity = gate_arity(g.kind);
    for (std::size_t k = 0; k < arity; ++k)
      if (!is_active(g.wires[k])) allocate(g.wires[k]);
    const std::span<Complex> v(rho_);
    const unsigned w = static_cast<unsigned>(width());
    if (arity == 1) {
      const Matrix2 m = rotation_matrix(g.kind, g.angle);
      const unsigned col = col_bit(g.wires[0]);
      kernels::apply_1q(v, col + w, m);
      kernels::apply_1q<true>(v, col, m);
    } else {
      if (g.wires[0] == g.wires[1]) throw std::invalid_argument("two-wire gate on a repeated wire");
      const Matrix4 m = fixed_gate_matrix(g.kind);
      const unsigned hi = col_bit(g.wires[0]), lo = col_bit(g.wires[1]);
      kernels::apply_2q(v, hi + w, lo + w, m);
      kernels::apply_2q<true>(v, hi, lo, m);
    }
  }

  double prob_one(Wire w) const {
    const std::size_t mask = std::size_t{1} << col_bit(w);
    double acc = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      if (i & mask) acc += at(i, i).real();
    return acc;
  }

  Complex trace() const {
    Complex acc = 0;
    for (std::size_t i = 0; i < dim(); ++i) acc += at(i, i);
    return acc;
  }

  double hermiticity_defect() const {
    double worst = 0;
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = r; c < dim(); ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

 private:
  static constexpr std::size_t kInactive = static_cast<std::size_t>(-1);

  static std::size_t insert_bit(std::size_t x, unsigned pos, std::size_t bit) {
    const std::size_t low = x & ((std::size_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | (bit << pos) | low;
  }

  std::size_t slot_or_throw(Wire w) const {
    if (w >= slot_of_.size() || slot_of_[w] == kInactive)
      throw std::invalid_argument("wire " + std::to_string(w) + " is not active");
    return slot_of_[w];
  }

  unsigned col_bit(Wire w) const { return static_cast<unsigned>(width() - 1 - slot_or_throw(w)); }

  std::size_t cap_;
  std::vector<std::size_t> slot_of_;
  std::vector<Wire> wire_at_;
  std::vector<Complex> rho_;
};

struct FrontierOptions {
  std::size_t width_cap = kDefaultWidthCap;
  /// Called after every gate and its retirements; test hook for invariants.
  std::function<void(const FrontierState&)> on_step;
};

/// Exact probability of reading 1 on the plan's readout wire.
inline double frontier_run(const CircuitPlan& plan, std::span<const double> angles,
                           const FrontierOptions& options = {}) {
  if (angles.size() != plan.gates.size())
    throw std::invalid_argument("frontier_run: need one resolved angle per gate");
  if (plan.retire_after.size() != plan.gates.size())
    throw std::invalid_argument("frontier_run: plan has no retire schedule");
  if (const std::size_t peak = peak_active_width(plan); peak > options.width_cap)
    throw ResourceLimitError(peak, options.width_cap);
  FrontierState state(plan.n_wires, options.width_cap);
  for (std::size_t g = 0; g < plan.gates.size(); ++g) {
    state.apply(resolved_gate(plan.gates[g], angles[g]));
    for (Wire w : plan.retire_after[g]) state.retire(w);
    if (options.on_step) options.on_step(state);
  }
  if (!state.is_active(plan.readout)) state.allocate(plan.readout);
  return std::clamp(state.prob_one(plan.readout), 0.0, 1.0);
}

/// Full state-vector reference for the same plan (width <= PureState::kMaxWires).
inline PureState simulate_pure(const CircuitPlan& plan, std::span<const double> angles) {
  if (angles.size() != plan.gates.size())
    throw std::invalid_argument("simulate_pure: need one resolved angle per gate");
  PureState state(plan.n_wires);
  for (std::size_t g = 0; g < plan.gates.size(); ++g) state.apply(resolved_gate(plan.gates[g], angles[g]));
  return state;
}

inline double pure_run(const CircuitPlan& plan, std::span<const double> angles) {
  return simulate_pure(plan, angles).prob_one(plan.readout);
}

}  // namespace qcnn

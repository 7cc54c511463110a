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

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcnn/core/gates.hpp"
#include "qcnn/core/kernels.hpp"

namespace qcnn {

/// Exact pure state over `n_wires` wires. Wire 0 is the most significant bit
/// of the basis index, so a two-wire product state is ordered
/// (a1 a2, a1 b2, b1 a2, b1 b2).
class PureState {
 public:
  static constexpr std::size_t kMaxWires = 28;

  explicit PureState(std::size_t n_wires) : n_wires_(n_wires) {
    if (n_wires == 0 || n_wires > kMaxWires)
      throw std::invalid_argument("PureState: wire count must be in [1, 28], got " +
                                  std::to_string(n_wires));
    amplitudes_.assign(std::size_t{1} << n_wires, Complex(0, 0));
    amplitudes_[0] = 1;
  }

  /// Takes ownership of explicit amplitudes; length must be a power of two.
  static PureState from_amplitudes(std::vector<Complex> amps) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if (amps.size() < 2 || (std::size_t{1} << n) != amps.size())
      throw std::invalid_argument("PureState: amplitude count must be a power of two >= 2");
    PureState s(n);
    s.amplitudes_ = std::move(amps);
    return s;
  }

  std::size_t n_wires() const noexcept { return n_wires_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }

  double norm_squared() const noexcept {
    double acc = 0;
    for (const auto& a : amplitudes_) acc += std::norm(a);
    return acc;
  }

  unsigned bit_of(Wire w) const {
    if (w >= n_wires_)
      throw std::invalid_argument("wire " + std::to_string(w) + " out of range for " +
                                  std::to_string(n_wires_) + "-wire state");
    return static_cast<unsigned>(n_wires_ - 1 - w);
  }

  void apply(const Gate& g) {
    if (is_rotation(g.kind)) {
      kernels::apply_1q(std::span<Complex>(amplitudes_), bit_of(g.wires[0]),
                        rotation_matrix(g.kind, g.angle));
      return;
    }
    if (g.wires[0] == g.wires[1]) throw std::invalid_argument("two-wire gate on a repeated wire");
    kernels::apply_2q(std::span<Complex>(amplitudes_), bit_of(g.wires[0]), bit_of(g.wires[1]),
                      fixed_gate_matrix(g.kind));
  }

  double prob_one(Wire w) const {
    const std::size_t mask = std::size_t{1} << bit_of(w);
    double acc = 0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i)
      if (i & mask) acc += std::norm(amplitudes_[i]);
    return acc;
  }

 private:
  std::size_t n_wires_;
  std::vector<Complex> amplitudes_;
};

inline PureState apply_gate(PureState state, const Gate& gate) {
  state.apply(gate);
  return state;
}

inline double exact_prob_one(const PureState& state, Wire wire) { return state.prob_one(wire); }

}  // namespace qcnn

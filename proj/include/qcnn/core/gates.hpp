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

// Gate matrices for the five gate kinds the simulator supports.
//
// The two-wire kinds are the matrices from the QCNN case study *as printed*,
// which do not follow textbook naming:
//   PaperCX = diag(1, 1, 1, -1)              (textbook controlled-Z)
//   PaperCY = controlled-Y, control on the low-order basis bit
//   PaperCZ = swap of basis states 1 and 3    (CNOT, control on the low-order bit)
// A two-wire matrix acts on the ordered wire pair (first, second) with
// `first` as the high-order bit, so with first = lower wire index the
// higher-index wire is the control.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string_view>

namespace qcnn {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;   // row-major 2x2
using Matrix4 = std::array<Complex, 16>;  // row-major 4x4

using Wire = std::size_t;

enum class GateKind { RX, RY, PaperCX, PaperCY, PaperCZ };

constexpr bool is_rotation(GateKind kind) noexcept {
  return kind == GateKind::RX || kind == GateKind::RY;
}

constexpr std::size_t gate_arity(GateKind kind) noexcept { return is_rotation(kind) ? 1 : 2; }

constexpr std::string_view gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::PaperCX: return "PAPER_CX";
    case GateKind::PaperCY: return "PAPER_CY";
    case GateKind::PaperCZ: return "PAPER_CZ";
  }
  return "?";
}

inline Matrix2 rx_matrix(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rx_matrix: non-finite angle");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0)};
}

inline Matrix2 ry_matrix(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("ry_matrix: non-finite angle");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0)};
}

inline Matrix2 rotation_matrix(GateKind kind, double theta) {
  switch (kind) {
    case GateKind::RX: return rx_matrix(theta);
    case GateKind::RY: return ry_matrix(theta);
    default: throw std::invalid_argument("rotation_matrix: not a rotation kind");
  }
}

inline Matrix4 fixed_gate_matrix(GateKind kind) {
  const Complex o(1, 0), z(0, 0), i(0, 1);
  switch (kind) {
    case GateKind::PaperCX:
      return {o, z, z, z,
              z, o, z, z,
              z, z, o, z,
              z, z, z, -o};
    case GateKind::PaperCY:
      return {o, z, z, z,
              z, z, z, -i,
              z, z, o, z,
              z, i, z, z};
    case GateKind::PaperCZ:
      return {o, z, z, z,
              z, z, z, o,
              z, z, o, z,
              z, o, z, z};
    default: throw std::invalid_argument("fixed_gate_matrix: not a two-wire kind");
  }
}

/// A gate with its angle already resolved. Rotations use wires[0] only.
struct Gate {
  GateKind kind = GateKind::RX;
  std::array<Wire, 2> wires{0, 0};
  double angle = 0;
};

/// max |(U^dagger U - I)_ij| for a row-major n x n matrix.
template <std::size_t N>
double unitarity_defect(const std::array<Complex, N>& u) {
  constexpr std::size_t n = N == 4 ? 2 : 4;
  static_assert(n * n == N);
  double worst = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(u[k * n + r]) * u[k * n + c];
      worst = std::max(worst, std::abs(acc - Complex(r == c ? 1.0 : 0.0, 0)));
    }
  return worst;
}

}  // namespace qcnn

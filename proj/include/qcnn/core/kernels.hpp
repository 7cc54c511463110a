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

// Dense amplitude kernels shared by the pure-state and density-matrix
// engines. Bit positions count from the least significant bit.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "qcnn/core/gates.hpp"

namespace qcnn::kernels {

template <bool Conjugate = false>
inline void apply_1q(std::span<Complex> v, unsigned pos, const Matrix2& m) {
  const Complex m0 = Conjugate ? std::conj(m[0]) : m[0];
  const Complex m1 = Conjugate ? std::conj(m[1]) : m[1];
  const Complex m2 = Conjugate ? std::conj(m[2]) : m[2];
  const Complex m3 = Conjugate ? std::conj(m[3]) : m[3];
  const std::size_t stride = std::size_t{1} << pos;
  const std::size_t n = v.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a = v[i], b = v[i + stride];
      v[i] = m0 * a + m1 * b;
      v[i + stride] = m2 * a + m3 * b;
    }
  }
}

/// Applies a 4x4 matrix in the basis |hi lo>, where `pos_hi` is the bit
/// carrying the matrix's high-order index bit.
template <bool Conjugate = false>
inline void apply_2q(std::span<Complex> v, unsigned pos_hi, unsigned pos_lo, const Matrix4& m) {
  Matrix4 mm = m;
  if constexpr (Conjugate)
    for (auto& x : mm) x = std::conj(x);
  const std::size_t hi = std::size_t{1} << pos_hi;
  const std::size_t lo = std::size_t{1} << pos_lo;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i & (hi | lo)) continue;
    const std::size_t idx[4] = {i, i | lo, i | hi, i | hi | lo};
    const Complex in[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      const Complex* row = &mm[static_cast<std::size_t>(r) * 4];
      v[idx[r]] = row[0] * in[0] + row[1] * in[1] + row[2] * in[2] + row[3] * in[3];
    }
  }
}

}  // namespace qcnn::kernels

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

// Qubit Lattice encoding: one wire per pixel, rotated by RY(pi * p / 255).

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcnn/core/circuit_plan.hpp"

namespace qcnn {

inline double pixel_to_angle(int pixel) {
  if (pixel < 0 || pixel > 255)
    throw std::invalid_argument("pixel intensity " + std::to_string(pixel) + " outside [0, 255]");
  return std::numbers::pi * pixel / 255.0;
}

/// Linear re-encoding of a measured probability, 1.0 playing the role of 255.
inline double prob_to_angle(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
  return std::numbers::pi * p;
}

struct AngleImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> angles;  // row-major, each in [0, pi]
};

inline AngleImage to_angle_image(std::span<const int> pixels, std::size_t width, std::size_t height) {
  if (pixels.size() != width * height) throw std::invalid_argument("pixel count does not match image shape");
  AngleImage out{width, height, {}};
  out.angles.reserve(pixels.size());
  for (int p : pixels) out.angles.push_back(pixel_to_angle(p));
  return out;
}

/// Resolved encoding gates: RY(pixel_to_angle(p_k)) on wire k, row-major.
inline std::vector<Gate> encode_image(std::span<const int> pixels) {
  std::vector<Gate> prefix;
  prefix.reserve(pixels.size());
  for (std::size_t k = 0; k < pixels.size(); ++k)
    prefix.push_back(Gate{GateKind::RY, {k, k}, pixel_to_angle(pixels[k])});
  return prefix;
}

/// The same prefix as plan operations bound to data slot k.
inline std::vector<GateOp> encoding_prefix(std::size_t pixel_count) {
  std::vector<GateOp> prefix;
  prefix.reserve(pixel_count);
  for (std::size_t k = 0; k < pixel_count; ++k)
    prefix.push_back(GateOp{GateKind::RY, {k, k}, DataSlot{k}, 0, kNoOrigin});
  return prefix;
}

}  // namespace qcnn

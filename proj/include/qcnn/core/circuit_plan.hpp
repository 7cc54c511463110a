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

// A circuit as data: an ordered gate list whose rotation angles are bound
// late (from image data, trainable parameters or constants), plus the
// readout wire and the schedule of wires that can be discarded after each
// gate.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qcnn/core/gates.hpp"

namespace qcnn {

struct ConstantAngle {
  double value = 0;
};
struct DataSlot {
  std::size_t index = 0;
};
struct ParamSlot {
  std::size_t layer = 0;
  std::size_t index = 0;
};
using AngleSource = std::variant<ConstantAngle, DataSlot, ParamSlot>;

inline constexpr std::size_t kNoOrigin = std::numeric_limits<std::size_t>::max();

struct GateOp {
  GateKind kind = GateKind::RX;
  std::array<Wire, 2> wires{0, 0};
  AngleSource angle = ConstantAngle{};
  /// Network layer the gate belongs to; 0 is the data-encoding prefix.
  std::size_t layer = 0;
  /// Stable identity of the gate inside the full network plan. Sub-plans
  /// keep it so a shifted occurrence can be addressed across both.
  std::size_t origin = kNoOrigin;
};

struct CircuitPlan {
  std::size_t n_wires = 0;
  std::vector<GateOp> gates;
  Wire readout = 0;
  /// retire_after[g]: wires whose last use is gate g (never the readout).
  std::vector<std::vector<Wire>> retire_after;
};

/// One rotation occurrence shifted by `delta`, addressed by gate origin.
struct AngleShift {
  std::size_t origin = kNoOrigin;
  double delta = 0;
};

/// Recomputes `retire_after` from the gate list and readout.
inline void compute_retire_schedule(CircuitPlan& plan) {
  std::vector<std::size_t> last_use(plan.n_wires, kNoOrigin);
  for (std::size_t g = 0; g < plan.gates.size(); ++g) {
    const auto& op = plan.gates[g];
    for (std::size_t k = 0; k < gate_arity(op.kind); ++k) {
      if (op.wires[k] >= plan.n_wires)
        throw std::invalid_argument("gate " + std::to_string(g) + " uses wire " +
                                    std::to_string(op.wires[k]) + " outside width " +
                                    std::to_string(plan.n_wires));
      last_use[op.wires[k]] = g;
    }
  }
  plan.retire_after.assign(plan.gates.size(), {});
  for (Wire w = 0; w < plan.n_wires; ++w)
    if (w != plan.readout && last_use[w] != kNoOrigin) plan.retire_after[last_use[w]].push_back(w);
}

/// Throws std::invalid_argument describing the first violated invariant.
inline void validate_plan(const CircuitPlan& plan) {
  if (plan.readout >= plan.n_wires) throw std::invalid_argument("readout wire outside circuit width");
  if (plan.retire_after.size() != plan.gates.size())
    throw std::invalid_argument("retire schedule length differs from gate count");
  std::vector<bool> retired(plan.n_wires, false);
  for (std::size_t g = 0; g < plan.gates.size(); ++g) {
    const auto& op = plan.gates[g];
    const std::size_t arity = gate_arity(op.kind);
    for (std::size_t k = 0; k < arity; ++k) {
      const Wire w = op.wires[k];
      if (w >= plan.n_wires) throw std::invalid_argument("gate wire outside circuit width");
      if (retired[w])
        throw std::invalid_argument("wire " + std::to_string(w) + " used by gate " +
                                    std::to_string(g) + " after retirement");
    }
    if (arity == 2 && op.wires[0] == op.wires[1])
      throw std::invalid_argument("two-wire gate " + std::to_string(g) + " repeats a wire");
    for (Wire w : plan.retire_after[g]) {
      if (w == plan.readout) throw std::invalid_argument("readout wire is scheduled for retirement");
      if (w >= plan.n_wires || retired[w]) throw std::invalid_argument("bad retirement entry");
      retired[w] = true;
    }
  }
}

/// Maximum number of simultaneously active wires when wires are allocated at
/// first use and dropped per the retire schedule.
inline std::size_t peak_active_width(const CircuitPlan& plan) {
  std::vector<bool> active(plan.n_wires, false);
  std::size_t width = 0, peak = 0;
  for (std::size_t g = 0; g < plan.gates.size(); ++g) {
    const auto& op = plan.gates[g];
    for (std::size_t k = 0; k < gate_arity(op.kind); ++k)
      if (!active[op.wires[k]]) {
        active[op.wires[k]] = true;
        ++width;
      }
    peak = std::max(peak, width);
    for (Wire w : plan.retire_after[g]) {
      active[w] = false;
      --width;
    }
  }
  return std::max<std::size_t>(peak, 1);
}

/// Resolves every gate's angle. `params` is layer-major with
/// `params_per_layer` entries per layer. Fixed gates get angle 0.
inline std::vector<double> resolve_angles(const CircuitPlan& plan, std::span<const double> data,
                                          std::span<const double> params,
                                          std::size_t params_per_layer,
                                          std::optional<AngleShift> shift = std::nullopt) {
  std::vector<double> out(plan.gates.size(), 0.0);
  for (std::size_t g = 0; g < plan.gates.size(); ++g) {
    const auto& op = plan.gates[g];
    if (!is_rotation(op.kind)) continue;
    double theta = 0;
    if (const auto* c = std::get_if<ConstantAngle>(&op.angle)) {
      theta = c->value;
    } else if (const auto* d = std::get_if<DataSlot>(&op.angle)) {
      if (d->index >= data.size()) throw std::invalid_argument("data slot out of range");
      theta = data[d->index];
    } else {
      const auto& p = std::get<ParamSlot>(op.angle);
      const std::size_t flat = p.layer * params_per_layer + p.index;
      if (p.index >= params_per_layer || flat >= params.size())
        throw std::invalid_argument("parameter slot out of range");
      theta = params[flat];
    }
    if (shift && op.origin == shift->origin) theta += shift->delta;
    out[g] = theta;
  }
  return out;
}

inline Gate resolved_gate(const GateOp& op, double angle) {
  return Gate{op.kind, op.wires, angle};
}

/// Gate indices of every rotation driven by the given flat parameter.
inline std::vector<std::size_t> param_occurrences(const CircuitPlan& plan, std::size_t flat,
                                                  std::size_t params_per_layer) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < plan.gates.size(); ++g)
    if (const auto* p = std::get_if<ParamSlot>(&plan.gates[g].angle))
      if (p->layer * params_per_layer + p->index == flat) out.push_back(plan.gates[g].origin);
  return out;
}

}  // namespace qcnn

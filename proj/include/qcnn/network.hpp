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

// QCNN architectures as circuit plans.
//
// Each 2x2 window (stride 2) gets a trainable RX per wire, with the four
// angles shared by every window of the layer, followed by a fixed entangler:
// (PAPER_CZ, PAPER_CY) from window wire 1 onto 0, from 3 onto 2, then from
// 2 onto 0. Wire 0 of the window carries the result. Pooling applies
// PAPER_CX from each odd representative onto its even neighbor.
//
// Gates are emitted depth-first (a window is finished and pooled before the
// next one starts), which keeps the frontier width small; every wire still
// sees its gates in the same order as the layer-by-layer circuit.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/core/circuit_plan.hpp"
#include "qcnn/core/frontier.hpp"
#include "qcnn/core/sampling.hpp"
#include "qcnn/dataset.hpp"
#include "qcnn/encoding.hpp"
#include "qcnn/errors.hpp"

namespace qcnn {

inline constexpr std::size_t kAnglesPerLayer = 4;

enum class Architecture { Conv, ConvPoolPool, ConvPoolConvPool };
enum class LayerKind { Conv, Pool };

inline std::size_t image_side(Architecture arch) {
  switch (arch) {
    case Architecture::Conv: return 2;
    case Architecture::ConvPoolPool: return 4;
    case Architecture::ConvPoolConvPool: return 8;
  }
  return 0;
}

inline std::vector<LayerKind> layer_sequence(Architecture arch) {
  using L = LayerKind;
  switch (arch) {
    case Architecture::Conv: return {L::Conv};
    case Architecture::ConvPoolPool: return {L::Conv, L::Pool, L::Pool};
    case Architecture::ConvPoolConvPool: return {L::Conv, L::Pool, L::Conv, L::Pool};
  }
  return {};
}

inline std::size_t conv_layer_count(Architecture arch) {
  std::size_t n = 0;
  for (auto k : layer_sequence(arch)) n += (k == LayerKind::Conv);
  return n;
}

inline std::size_t param_count(Architecture arch) { return conv_layer_count(arch) * kAnglesPerLayer; }

inline std::string_view arch_name(Architecture arch) {
  switch (arch) {
    case Architecture::Conv: return "conv";
    case Architecture::ConvPoolPool: return "conv-pool-pool";
    case Architecture::ConvPoolConvPool: return "conv-pool-conv-pool";
  }
  return "?";
}

inline Architecture parse_arch(std::string_view name) {
  for (auto a : {Architecture::Conv, Architecture::ConvPoolPool, Architecture::ConvPoolConvPool})
    if (arch_name(a) == name) return a;
  throw std::invalid_argument("unknown architecture '" + std::string(name) +
                              "' (expected conv, conv-pool-pool or conv-pool-conv-pool)");
}

inline Architecture arch_for_side(std::size_t side) {
  switch (side) {
    case 2: return Architecture::Conv;
    case 4: return Architecture::ConvPoolPool;
    case 8: return Architecture::ConvPoolConvPool;
  }
  throw std::invalid_argument("no architecture for image side " + std::to_string(side));
}

/// Trainable angles, layer-major: angles[layer * 4 + j] is a_j of conv layer
/// `layer`, with j in (a00, a01, a10, a11) order.
struct ModelParams {
  std::vector<double> angles;

  std::size_t layers() const noexcept { return angles.size() / kAnglesPerLayer; }
  bool operator==(const ModelParams&) const = default;
};

enum class InitScheme { Zeros, Uniform };

inline ModelParams init_params(Architecture arch, std::uint64_t seed, InitScheme scheme = InitScheme::Uniform) {
  ModelParams p{std::vector<double>(param_count(arch), 0.0)};
  if (scheme == InitScheme::Uniform) {
    Rng rng(seed);
    for (auto& a : p.angles) a = rng.uniform(0.0, std::numbers::pi);
  }
  return p;
}

inline void check_params(Architecture arch, const ModelParams& params) {
  if (params.angles.size() != param_count(arch))
    throw std::invalid_argument(std::string(arch_name(arch)) + " expects " +
                                std::to_string(param_count(arch)) + " angles, got " +
                                std::to_string(params.angles.size()));
}

inline void write_params(std::ostream& os, const ModelParams& params) {
  os << std::setprecision(17);
  for (double a : params.angles) os << a << '\n';
}

inline void save_params(const ModelParams& params, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_params(os, params);
}

inline ModelParams read_params(std::istream& is) {
  ModelParams p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "not a number: '" + line + "'");
    }
    if (used != line.size() || !std::isfinite(v)) throw ParseError(lineno, "not a finite number: '" + line + "'");
    p.angles.push_back(v);
  }
  if (p.angles.empty() || p.angles.size() % kAnglesPerLayer != 0)
    throw ParseError(0, "params file must hold a positive multiple of 4 angles, found " +
                            std::to_string(p.angles.size()));
  return p;
}

inline ModelParams load_params(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_params(is);
}

/// Wires readable at each layer's output; outputs[k] belongs to layer k + 1.
struct LayerBoundary {
  std::vector<std::vector<Wire>> outputs;
};

/// One layer evaluated on its own: `inputs` are re-encoded from the previous
/// layer's measured probabilities (data slot i <-> inputs[i]); each entry of
/// `readouts` is the light cone of one output wire.
struct LayerStage {
  LayerKind kind = LayerKind::Conv;
  std::vector<Wire> inputs;
  std::vector<CircuitPlan> readouts;
};

struct NetworkPlan {
  Architecture arch = Architecture::Conv;
  CircuitPlan plan;
  LayerBoundary boundary;
  std::vector<LayerStage> stages;
};

namespace detail {

class PlanBuilder {
 public:
  PlanBuilder(Architecture arch) : arch_(arch) {}

  NetworkPlan build() {
    const std::size_t side = image_side(arch_);
    const auto layers = layer_sequence(arch_);

    // Layer-by-layer tree of producers, grid row-major.
    std::vector<std::size_t> grid(side * side);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = add_node({Node::Pixel, k, 0, 0, {}});
    std::size_t rows = side, cols = side;
    std::size_t conv_ordinal = 0;
    for (std::size_t li = 0; li < layers.size(); ++li) {
      std::vector<std::size_t> next;
      if (layers[li] == LayerKind::Conv) {
        if (rows % 2 || cols % 2) throw std::logic_error("conv layer on odd grid");
        for (std::size_t r = 0; r < rows; r += 2)
          for (std::size_t c = 0; c < cols; c += 2) {
            const std::vector<std::size_t> kids{grid[r * cols + c], grid[r * cols + c + 1],
                                                grid[(r + 1) * cols + c], grid[(r + 1) * cols + c + 1]};
            next.push_back(add_node({Node::Conv, nodes_[kids[0]].wire, li + 1, conv_ordinal, kids}));
          }
        rows /= 2;
        cols /= 2;
        ++conv_ordinal;
      } else {
        for (std::size_t i = 0; i + 1 < grid.size(); i += 2)
          next.push_back(add_node({Node::Pool, nodes_[grid[i]].wire, li + 1, 0, {grid[i], grid[i + 1]}}));
        if (cols >= 2) cols /= 2;
        else rows /= 2;
      }
      std::vector<Wire> outs;
      for (auto n : next) outs.push_back(nodes_[n].wire);
      result_.boundary.outputs.push_back(std::move(outs));
      grid = std::move(next);
    }
    if (grid.size() != 1) throw std::logic_error("architecture does not reduce to one wire");

    result_.arch = arch_;
    result_.plan.n_wires = side * side;
    result_.plan.readout = nodes_[grid[0]].wire;
    emit(grid[0]);
    for (std::size_t g = 0; g < result_.plan.gates.size(); ++g) result_.plan.gates[g].origin = g;
    compute_retire_schedule(result_.plan);
    build_stages(layers);
    return std::move(result_);
  }

 private:
  struct Node {
    enum Kind { Pixel, Conv, Pool } kind;
    Wire wire;
    std::size_t layer;         // network layer (1-based), 0 for pixels
    std::size_t conv_ordinal;  // parameter layer for Conv nodes
    std::vector<std::size_t> kids;
  };

  std::size_t add_node(Node n) {
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  void push(GateKind kind, Wire a, Wire b, AngleSource src, std::size_t layer) {
    result_.plan.gates.push_back(GateOp{kind, {a, b}, src, layer, kNoOrigin});
  }

  // Entangler from `control` onto `target` (control is the higher wire).
  void entangle(Wire target, Wire control, std::size_t layer) {
    push(GateKind::PaperCZ, target, control, ConstantAngle{}, layer);
    push(GateKind::PaperCY, target, control, ConstantAngle{}, layer);
  }

  void emit(std::size_t id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Node::Pixel:
        push(GateKind::RY, n.wire, n.wire, DataSlot{n.wire}, 0);
        return;
      case Node::Pool:
        emit(n.kids[0]);
        emit(n.kids[1]);
        push(GateKind::PaperCX, nodes_[n.kids[0]].wire, nodes_[n.kids[1]].wire, ConstantAngle{}, n.layer);
        return;
      case Node::Conv: {
        std::array<Wire, 4> w{};
        for (std::size_t j = 0; j < 4; ++j) {
          emit(n.kids[j]);
          w[j] = nodes_[n.kids[j]].wire;
          push(GateKind::RX, w[j], w[j], ParamSlot{n.conv_ordinal, j}, n.layer);
          if (j == 1) entangle(w[0], w[1], n.layer);
          if (j == 3) {
            entangle(w[2], w[3], n.layer);
            entangle(w[0], w[2], n.layer);
          }
        }
        return;
      }
    }
  }

  void build_stages(const std::vector<LayerKind>& layers) {
    const auto& full = result_.plan;
    for (std::size_t li = 0; li < layers.size(); ++li) {
      LayerStage stage;
      stage.kind = layers[li];
      std::vector<GateOp> ops;
      if (li == 0) {
        for (Wire w = 0; w < full.n_wires; ++w) stage.inputs.push_back(w);
        for (const auto& op : full.gates)
          if (op.layer <= 1) ops.push_back(op);
      } else {
        stage.inputs = result_.boundary.outputs[li - 1];
        for (std::size_t i = 0; i < stage.inputs.size(); ++i)
          ops.push_back(GateOp{GateKind::RY, {stage.inputs[i], stage.inputs[i]}, DataSlot{i}, li, kNoOrigin});
        for (const auto& op : full.gates)
          if (op.layer == li + 1) ops.push_back(op);
      }
      // Light cone of each output wire: its connected component.
      std::vector<Wire> parent(full.n_wires);
      std::iota(parent.begin(), parent.end(), Wire{0});
      auto find = [&](Wire x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& op : ops)
        if (gate_arity(op.kind) == 2) parent[find(op.wires[0])] = find(op.wires[1]);
      for (Wire out : result_.boundary.outputs[li]) {
        CircuitPlan sub;
        sub.n_wires = full.n_wires;
        sub.readout = out;
        for (const auto& op : ops)
          if (find(op.wires[0]) == find(out)) sub.gates.push_back(op);
        compute_retire_schedule(sub);
        stage.readouts.push_back(std::move(sub));
      }
      result_.stages.push_back(std::move(stage));
    }
  }

  Architecture arch_;
  std::vector<Node> nodes_;
  NetworkPlan result_;
};

}  // namespace detail

/// Parameter- and image-independent plan for an architecture; angles bind
/// at evaluation time through resolve_angles.
inline NetworkPlan build_network(Architecture arch) { return detail::PlanBuilder(arch).build(); }

/// Image angles (row-major) for a labeled image, checked against the architecture.
inline std::vector<double> image_angles(Architecture arch, const LabeledImage& img) {
  if (img.side != image_side(arch) || img.pixels.size() != img.side * img.side)
    throw std::invalid_argument(std::string(arch_name(arch)) + " needs " + std::to_string(image_side(arch)) +
                                "x" + std::to_string(image_side(arch)) + " images, got side " +
                                std::to_string(img.side));
  return to_angle_image(img.pixels, img.side, img.side).angles;
}

/// A fully bound circuit: the network plan plus one resolved angle per gate.
struct BoundPlan {
  CircuitPlan plan;
  LayerBoundary boundary;
  std::vector<double> angles;
};

inline BoundPlan build_plan(Architecture arch, const ModelParams& params, const LabeledImage& img) {
  check_params(arch, params);
  auto net = build_network(arch);
  const auto data = image_angles(arch, img);
  auto angles = resolve_angles(net.plan, data, params.angles, kAnglesPerLayer);
  return BoundPlan{std::move(net.plan), std::move(net.boundary), std::move(angles)};
}

/// Readout probability of the whole network in one exact run.
inline double network_prob_one(const NetworkPlan& net, std::span<const double> data, const ModelParams& params,
                               std::optional<AngleShift> shift = std::nullopt) {
  const auto angles = resolve_angles(net.plan, data, params.angles, kAnglesPerLayer, shift);
  return frontier_run(net.plan, angles);
}

struct ProbabilityGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;  // row-major
};

/// Runs the single-window kernel circuit on every non-overlapping 2x2 window.
inline ProbabilityGrid conv_feature_map(std::span<const int> pixels, std::size_t width, std::size_t height,
                                        const ModelParams& kernel) {
  if (width == 0 || height == 0 || width % 2 || height % 2)
    throw std::invalid_argument("feature map needs even, non-zero image dimensions; got " +
                                std::to_string(width) + "x" + std::to_string(height));
  if (pixels.size() != width * height) throw std::invalid_argument("pixel count does not match image shape");
  check_params(Architecture::Conv, kernel);
  static const NetworkPlan net = build_network(Architecture::Conv);
  ProbabilityGrid out{width / 2, height / 2, {}};
  out.values.reserve(out.width * out.height);
  for (std::size_t r = 0; r < height; r += 2)
    for (std::size_t c = 0; c < width; c += 2) {
      const std::array<double, 4> window{
          pixel_to_angle(pixels[r * width + c]), pixel_to_angle(pixels[r * width + c + 1]),
          pixel_to_angle(pixels[(r + 1) * width + c]), pixel_to_angle(pixels[(r + 1) * width + c + 1])};
      out.values.push_back(network_prob_one(net, window, kernel));
    }
  return out;
}

}  // namespace qcnn

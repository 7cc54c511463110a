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

// Forward passes, loss, gradient rules and the epoch loop.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcnn/core/frontier.hpp"
#include "qcnn/core/sampling.hpp"
#include "qcnn/dataset.hpp"
#include "qcnn/encoding.hpp"
#include "qcnn/network.hpp"
#include "qcnn/parallel.hpp"

namespace qcnn {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double sigmoid_deriv(double x) {
  const double s = sigmoid(x);
  return s * (1.0 - s);
}

enum class GradMethod { Sigmoid, Shift, Combined };
enum class MeasureMode { EndToEnd, Intermediate };
enum class UpdateStrategy { Simultaneous, LayerWise };
enum class EvalMode { Exact, Sampled };

struct TrainConfig {
  Architecture arch = Architecture::Conv;
  std::size_t epochs = 500;
  std::size_t batch_size = 1000;
  double learning_rate = 1e-7;
  std::size_t shots = 1000;
  GradMethod grad_method = GradMethod::Shift;
  MeasureMode measure_mode = MeasureMode::EndToEnd;
  UpdateStrategy update_strategy = UpdateStrategy::Simultaneous;
  EvalMode eval_mode = EvalMode::Exact;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  InitScheme init = InitScheme::Uniform;
  /// Draw a new batch every epoch instead of reusing the training set.
  bool fresh_batches = false;
  std::size_t jobs = 1;
  std::size_t width_cap = kDefaultWidthCap;

  void validate() const {
    if (!(learning_rate > 0) || !std::isfinite(learning_rate))
      throw std::invalid_argument("learning rate must be positive and finite");
    if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (batch_size < 1) throw std::invalid_argument("batch size must be at least 1");
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (!(threshold > 0 && threshold < 1)) throw std::invalid_argument("threshold must lie in (0, 1)");
  }
};

struct Prediction {
  double p1 = 0;
  double activated = 0.5;
  int label_hat = 0;
};

inline Prediction make_prediction(double p1, double threshold) {
  const double a = sigmoid(p1);
  return Prediction{p1, a, a > threshold ? 1 : 0};
}

/// Evaluates the readout probability of one architecture under a measure
/// and evaluation mode. Immutable after construction; safe to share.
class Evaluator {
 public:
  Evaluator(Architecture arch, MeasureMode measure, EvalMode eval, std::size_t shots,
            std::size_t width_cap = kDefaultWidthCap)
      : net_(build_network(arch)), measure_(measure), eval_(eval), shots_(shots) {
    if (shots_ < 1) throw std::invalid_argument("shots must be at least 1");
    frontier_.width_cap = width_cap;
    // Fail before any work if the plan cannot fit.
    const auto& plans = measure_ == MeasureMode::EndToEnd ? std::vector<CircuitPlan>{net_.plan} : stage_plans();
    for (const auto& p : plans)
      if (const std::size_t peak = peak_active_width(p); peak > width_cap) throw ResourceLimitError(peak, width_cap);
  }

  const NetworkPlan& network() const noexcept { return net_; }
  Architecture arch() const noexcept { return net_.arch; }

  /// Circuit runs needed for one readout probability.
  std::size_t runs_per_eval() const {
    if (measure_ == MeasureMode::EndToEnd) return 1;
    std::size_t n = 0;
    for (const auto& s : net_.stages) n += s.readouts.size();
    return n;
  }

  /// `seed` only matters in sampled mode.
  double prob_one(std::span<const double> data, const ModelParams& params,
                  std::optional<AngleShift> shift = std::nullopt, std::uint64_t seed = 0) const {
    if (measure_ == MeasureMode::EndToEnd) {
      const auto angles = resolve_angles(net_.plan, data, params.angles, kAnglesPerLayer, shift);
      return observe(frontier_run(net_.plan, angles, frontier_), seed);
    }

    std::vector<double> current(data.begin(), data.end());
    std::vector<double> measured;
    for (std::size_t s = 0; s < net_.stages.size(); ++s) {
      const auto& stage = net_.stages[s];
      measured.clear();
      for (std::size_t r = 0; r < stage.readouts.size(); ++r) {
        const auto& sub = stage.readouts[r];
        const auto angles = resolve_angles(sub, current, params.angles, kAnglesPerLayer, shift);
        measured.push_back(observe(frontier_run(sub, angles, frontier_), derive_seed(seed, s + 1, r)));
      }
      if (s + 1 < net_.stages.size()) {
        current.clear();
        for (double p : measured) current.push_back(prob_to_angle(p));
      }
    }
    return measured.front();
  }

 private:
  double observe(double p, std::uint64_t seed) const {
    if (eval_ == EvalMode::Exact) return p;
    return static_cast<double>(sample_shots(p, shots_, seed)) / static_cast<double>(shots_);
  }

  std::vector<CircuitPlan> stage_plans() const {
    std::vector<CircuitPlan> out;
    for (const auto& s : net_.stages) out.insert(out.end(), s.readouts.begin(), s.readouts.end());
    return out;
  }

  NetworkPlan net_;
  FrontierOptions frontier_;
  MeasureMode measure_;
  EvalMode eval_;
  std::size_t shots_;
};

inline Prediction forward(const Evaluator& ev, const ModelParams& params, const LabeledImage& img,
                          double threshold = 0.5, std::uint64_t seed = 0) {
  check_params(ev.arch(), params);
  const auto data = image_angles(ev.arch(), img);
  return make_prediction(ev.prob_one(data, params, std::nullopt, seed), threshold);
}

inline double mse(std::span<const double> predictions, std::span<const int> labels) {
  if (predictions.empty()) throw std::invalid_argument("mse: empty batch");
  if (predictions.size() != labels.size()) throw std::invalid_argument("mse: length mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - labels[i];
    acc += d * d;
  }
  return acc / static_cast<double>(predictions.size());
}

/// Two-term parameter-shift rule applied coordinate-wise to `f`. Exact when
/// each coordinate drives a single RX/RY rotation and f is linear in the
/// measured probabilities.
template <typename F>
std::vector<double> shift_rule(F&& f, std::span<const double> theta) {
  std::vector<double> grad(theta.size());
  std::vector<double> probe(theta.begin(), theta.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + std::numbers::pi / 2;
    const double plus = f(std::span<const double>(probe));
    probe[j] = theta[j] - std::numbers::pi / 2;
    const double minus = f(std::span<const double>(probe));
    probe[j] = theta[j];
    grad[j] = 0.5 * (plus - minus);
  }
  return grad;
}

/// d p1 / d theta_j for the selected parameters (others left 0). Shared
/// angles are handled by shifting each gate occurrence separately and
/// summing. `runs` accumulates circuit executions.
inline std::vector<double> readout_gradient(const Evaluator& ev, std::span<const double> data,
                                            const ModelParams& params, std::span<const std::size_t> which,
                                            std::uint64_t seed = 0, std::size_t* runs = nullptr) {
  std::vector<double> grad(params.angles.size(), 0.0);
  std::uint64_t eval_id = 1;
  for (std::size_t j : which) {
    for (std::size_t origin : param_occurrences(ev.network().plan, j, kAnglesPerLayer)) {
      const double plus = ev.prob_one(data, params, AngleShift{origin, std::numbers::pi / 2},
                                      derive_seed(seed, eval_id++));
      const double minus = ev.prob_one(data, params, AngleShift{origin, -std::numbers::pi / 2},
                                       derive_seed(seed, eval_id++));
      grad[j] += 0.5 * (plus - minus);
      if (runs) *runs += 2 * ev.runs_per_eval();
    }
  }
  return grad;
}

/// Per-sample quantities a batch gradient is assembled from.
struct SampleTrace {
  double p1 = 0;
  int label = 0;
  std::vector<double> dp1;  // empty when not requested
};

/// Batch gradient of the shift or combined rule. Per sample the error
/// (activated - label) is chained with d p1/d theta; the combined rule also
/// multiplies by sigmoid'(p1), giving the exact MSE gradient. The shift rule
/// is then the exact gradient of 2 * mean(softplus(p1) - label * p1).
/// `sigmoid_factor`, when set, replaces sigmoid'(p1) (test hook).
inline std::vector<double> batch_gradient(std::span<const SampleTrace> batch, GradMethod method,
                                          std::optional<double> sigmoid_factor = std::nullopt) {
  if (batch.empty()) throw std::invalid_argument("batch_gradient: empty batch");
  if (method == GradMethod::Sigmoid) throw std::invalid_argument("batch_gradient: sigmoid rule has no gradient");
  std::vector<double> g(batch.front().dp1.size(), 0.0);
  for (const auto& s : batch) {
    if (s.dp1.size() != g.size()) throw std::invalid_argument("batch_gradient: shape mismatch");
    double w = 2.0 * (sigmoid(s.p1) - s.label);
    if (method == GradMethod::Combined) w *= sigmoid_factor.value_or(sigmoid_deriv(s.p1));
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += w * s.dp1[j];
  }
  for (auto& x : g) x /= static_cast<double>(batch.size());
  return g;
}

/// params += lr * mean_i(p1_i * (label_i - activated_i) * sigmoid'(p1_i)),
/// the same scalar for every angle of the selected layers.
inline ModelParams grad_sigmoid_update(const ModelParams& params, std::span<const double> batch_p1s,
                                       std::span<const double> errors, double learning_rate,
                                       std::span<const std::size_t> layers = {}) {
  if (batch_p1s.empty()) throw std::invalid_argument("sigmoid update: empty batch");
  if (batch_p1s.size() != errors.size()) throw std::invalid_argument("sigmoid update: shape mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < batch_p1s.size(); ++i)
    acc += batch_p1s[i] * errors[i] * sigmoid_deriv(batch_p1s[i]);
  const double step = learning_rate * acc / static_cast<double>(batch_p1s.size());
  ModelParams out = params;
  for (std::size_t j = 0; j < out.angles.size(); ++j) {
    const std::size_t layer = j / kAnglesPerLayer;
    if (layers.empty() || std::find(layers.begin(), layers.end(), layer) != layers.end()) out.angles[j] += step;
  }
  return out;
}

/// Losses whose exact gradients the shift and combined rules compute.
inline double mse_loss(std::span<const SampleTrace> batch) {
  double acc = 0;
  for (const auto& s : batch) acc += std::pow(sigmoid(s.p1) - s.label, 2);
  return acc / static_cast<double>(batch.size());
}

inline double shift_surrogate_loss(std::span<const SampleTrace> batch) {
  double acc = 0;
  for (const auto& s : batch) acc += 2.0 * (std::log1p(std::exp(s.p1)) - s.label * s.p1);
  return acc / static_cast<double>(batch.size());
}

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double mse = 0;
  double millis = 0;
  std::uint64_t circuit_runs = 0;
};

struct LossCurve {
  std::vector<EpochRecord> records;
};

inline void write_curve(std::ostream& os, const LossCurve& curve) {
  os << "epoch,mse\n" << std::setprecision(17);
  for (const auto& r : curve.records) os << r.epoch << ',' << r.mse << '\n';
}

inline void save_curve(const LossCurve& curve, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_curve(os, curve);
}

struct TrainResult {
  ModelParams params;
  LossCurve curve;
  std::uint64_t circuit_runs = 0;
};

struct EvalReport {
  double mse = 0;
  double accuracy = 0;
  std::size_t samples = 0;
};

inline EvalReport evaluate(const Evaluator& ev, const ModelParams& params, const std::vector<LabeledImage>& data,
                           double threshold, std::uint64_t seed, std::size_t jobs = 1) {
  if (data.empty()) throw std::invalid_argument("evaluate: empty dataset");
  check_params(ev.arch(), params);
  std::vector<Prediction> preds(data.size());
  parallel_for(data.size(), jobs,
               [&](std::size_t i) { preds[i] = forward(ev, params, data[i], threshold, derive_seed(seed, i)); });
  std::vector<double> act;
  std::vector<int> labels;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    act.push_back(preds[i].activated);
    labels.push_back(data[i].label);
    correct += preds[i].label_hat == data[i].label;
  }
  return EvalReport{mse(act, labels), static_cast<double>(correct) / static_cast<double>(data.size()), data.size()};
}

namespace detail {

struct BatchPass {
  std::vector<SampleTrace> traces;
  std::uint64_t runs = 0;
};

inline BatchPass run_batch(const Evaluator& ev, const ModelParams& params, std::span<const LabeledImage> batch,
                           std::span<const std::size_t> grad_params, std::uint64_t seed, std::size_t jobs) {
  BatchPass out;
  out.traces.resize(batch.size());
  std::vector<std::size_t> runs(batch.size(), 0);
  parallel_for(batch.size(), jobs, [&](std::size_t i) {
    const auto data = image_angles(ev.arch(), batch[i]);
    const std::uint64_t sample_seed = derive_seed(seed, i);
    auto& t = out.traces[i];
    t.label = batch[i].label;
    t.p1 = ev.prob_one(data, params, std::nullopt, sample_seed);
    runs[i] = ev.runs_per_eval();
    if (!grad_params.empty()) t.dp1 = readout_gradient(ev, data, params, grad_params, sample_seed, &runs[i]);
  });
  for (auto r : runs) out.runs += r;
  return out;
}

inline std::vector<std::size_t> params_of_layers(std::span<const std::size_t> layers) {
  std::vector<std::size_t> out;
  for (auto l : layers)
    for (std::size_t j = 0; j < kAnglesPerLayer; ++j) out.push_back(l * kAnglesPerLayer + j);
  return out;
}

}  // namespace detail

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Trains from `init` on `train_set` (reused every epoch unless
/// config.fresh_batches). Each epoch walks the set in batches of
/// config.batch_size; the recorded MSE is over the pre-update predictions.
inline TrainResult train(const TrainConfig& config, const std::vector<LabeledImage>& train_set,
                         const ModelParams& init, const EpochCallback& on_epoch = {}) {
  config.validate();
  check_params(config.arch, init);
  if (train_set.empty() && !config.fresh_batches) throw std::invalid_argument("train: empty training set");
  const Evaluator ev(config.arch, config.measure_mode, config.eval_mode, config.shots, config.width_cap);
  const std::size_t n_layers = conv_layer_count(config.arch);
  std::vector<std::size_t> all_layers(n_layers);
  std::iota(all_layers.begin(), all_layers.end(), std::size_t{0});

  TrainResult result{init, {}, 0};
  ModelParams& params = result.params;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<LabeledImage> fresh;
    if (config.fresh_batches)
      fresh = gen_dataset(config.batch_size, image_side(config.arch), derive_seed(config.seed, 3, epoch));
    const auto& samples = config.fresh_batches ? fresh : train_set;

    std::uint64_t runs = 0;
    double sq_err = 0;
    for (std::size_t start = 0, step = 0; start < samples.size(); start += config.batch_size, ++step) {
      const std::span<const LabeledImage> batch(samples.data() + start,
                                                std::min(config.batch_size, samples.size() - start));
      const std::uint64_t batch_seed = derive_seed(config.seed, 2, epoch * 1000003 + step);
      // Simultaneous: one pass and one step for every layer. Layer-wise:
      // input-most layer first, each from a fresh pass.
      std::vector<std::vector<std::size_t>> groups;
      if (config.update_strategy == UpdateStrategy::Simultaneous) groups.push_back(all_layers);
      else
        for (auto l : all_layers) groups.push_back({l});

      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& layers = groups[gi];
        const auto grad_params = config.grad_method == GradMethod::Sigmoid
                                     ? std::vector<std::size_t>{}
                                     : detail::params_of_layers(layers);
        auto pass = detail::run_batch(ev, params, batch, grad_params, derive_seed(batch_seed, gi), config.jobs);
        runs += pass.runs;
        if (gi == 0)
          for (const auto& t : pass.traces) sq_err += std::pow(sigmoid(t.p1) - t.label, 2);

        if (config.grad_method == GradMethod::Sigmoid) {
          std::vector<double> p1s, errors;
          for (const auto& t : pass.traces) {
            p1s.push_back(t.p1);
            errors.push_back(t.label - sigmoid(t.p1));
          }
          params = grad_sigmoid_update(params, p1s, errors, config.learning_rate, layers);
        } else {
          const auto g = batch_gradient(pass.traces, config.grad_method);
          for (std::size_t j = 0; j < g.size(); ++j) params.angles[j] -= config.learning_rate * g[j];
        }
      }
    }
    const auto t1 = std::chrono::steady_clock::now();
    EpochRecord rec{epoch, sq_err / static_cast<double>(samples.size()),
                    std::chrono::duration<double, std::milli>(t1 - t0).count(), runs};
    result.circuit_runs += runs;
    result.curve.records.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return result;
}

}  // namespace qcnn

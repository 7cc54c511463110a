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

// Classical single-convolution baseline for 2x2 images: one 2x2 kernel with
// stride 2 covers the whole image, so the model is sigmoid(w . x / 255 + b).

#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcnn/core/sampling.hpp"
#include "qcnn/dataset.hpp"
#include "qcnn/training.hpp"

namespace qcnn {

struct ClassicalKernel {
  std::array<double, 4> weights{0, 0, 0, 0};
  double bias = 0;
};

inline ClassicalKernel init_classical_kernel(std::uint64_t seed) {
  Rng rng(seed);
  ClassicalKernel k;
  for (auto& w : k.weights) w = rng.uniform(-0.5, 0.5);
  return k;
}

inline double classical_logit(std::span<const int> pixels, const ClassicalKernel& k) {
  if (pixels.size() != 4) throw std::invalid_argument("classical baseline takes 2x2 images");
  double z = k.bias;
  for (std::size_t j = 0; j < 4; ++j) z += k.weights[j] * (pixels[j] / 255.0);
  return z;
}

inline double classical_forward(std::span<const int> pixels, const ClassicalKernel& k) {
  return sigmoid(classical_logit(pixels, k));
}

inline double classical_loss(std::span<const LabeledImage> batch, const ClassicalKernel& k) {
  if (batch.empty()) throw std::invalid_argument("classical_loss: empty batch");
  double acc = 0;
  for (const auto& s : batch) acc += std::pow(classical_forward(s.pixels, k) - s.label, 2);
  return acc / static_cast<double>(batch.size());
}

/// Analytic MSE gradient: entries 0..3 are the weights, entry 4 the bias.
inline std::array<double, 5> classical_gradient(std::span<const LabeledImage> batch, const ClassicalKernel& k) {
  if (batch.empty()) throw std::invalid_argument("classical_gradient: empty batch");
  std::array<double, 5> g{};
  for (const auto& s : batch) {
    const double z = classical_logit(s.pixels, k);
    const double delta = 2.0 * (sigmoid(z) - s.label) * sigmoid_deriv(z);
    for (std::size_t j = 0; j < 4; ++j) g[j] += delta * (s.pixels[j] / 255.0);
    g[4] += delta;
  }
  for (auto& x : g) x /= static_cast<double>(batch.size());
  return g;
}

struct ClassicalResult {
  ClassicalKernel kernel;
  LossCurve curve;
};

/// Plain gradient descent with the same batching and curve semantics as the
/// quantum trainer. Only epochs, batch_size, learning_rate, seed and
/// fresh_batches of `config` are used.
inline ClassicalResult classical_train(const TrainConfig& config, const std::vector<LabeledImage>& train_set,
                                       const ClassicalKernel& init) {
  if (!(config.learning_rate >= 0) || config.epochs < 1 || config.batch_size < 1)
    throw std::invalid_argument("classical_train: invalid configuration");
  ClassicalResult result{init, {}};
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<LabeledImage> fresh;
    if (config.fresh_batches) fresh = gen_dataset(config.batch_size, 2, derive_seed(config.seed, 3, epoch));
    const auto& samples = config.fresh_batches ? fresh : train_set;
    if (samples.empty()) throw std::invalid_argument("classical_train: empty training set");
    double sq_err = 0;
    for (std::size_t start = 0; start < samples.size(); start += config.batch_size) {
      const std::span<const LabeledImage> batch(samples.data() + start,
                                                std::min(config.batch_size, samples.size() - start));
      sq_err += classical_loss(batch, result.kernel) * static_cast<double>(batch.size());
      const auto g = classical_gradient(batch, result.kernel);
      for (std::size_t j = 0; j < 4; ++j) result.kernel.weights[j] -= config.learning_rate * g[j];
      result.kernel.bias -= config.learning_rate * g[4];
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.curve.records.push_back(EpochRecord{epoch, sq_err / static_cast<double>(samples.size()),
                                               std::chrono::duration<double, std::milli>(t1 - t0).count(),
                                               0});
  }
  return result;
}

}  // namespace qcnn

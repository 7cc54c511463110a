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

#include <gtest/gtest.h>

#include "qcnn/baseline.hpp"

namespace qcnn {
namespace {

TEST(ClassicalForward, Examples) {
  const ClassicalKernel zero;
  const std::vector<int> img{12, 200, 0, 255};
  EXPECT_EQ(classical_forward(img, zero), 0.5);
  const ClassicalKernel quarter{{0.25, 0.25, 0.25, 0.25}, 0};
  EXPECT_NEAR(classical_forward(std::vector<int>(4, 255), quarter), 0.7310585786300049, 1e-15);
  EXPECT_THROW(classical_forward(std::vector<int>(16, 0), quarter), std::invalid_argument);
}

TEST(ClassicalForward, Codomain) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto k = init_classical_kernel(rng.next_u64());
    k.bias = rng.uniform(-5, 5);
    const double a = classical_forward(gen_sample(2, rng).pixels, k);
    EXPECT_TRUE(a > 0 && a < 1);
  }
}

TEST(ClassicalKernel, InitRange) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto k = init_classical_kernel(s);
    for (double w : k.weights) EXPECT_TRUE(w >= -0.5 && w < 0.5);
    EXPECT_EQ(k.bias, 0.0);
  }
  EXPECT_EQ(init_classical_kernel(3).weights, init_classical_kernel(3).weights);
}

TEST(ClassicalGradient, MatchesFiniteDifference) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    auto k = init_classical_kernel(rng.next_u64());
    k.bias = rng.uniform(-1, 1);
    const auto batch = gen_dataset(16, 2, rng.next_u64());
    const auto g = classical_gradient(batch, k);
    const double h = 1e-6;
    for (std::size_t j = 0; j < 5; ++j) {
      auto plus = k, minus = k;
      (j < 4 ? plus.weights[j] : plus.bias) += h;
      (j < 4 ? minus.weights[j] : minus.bias) -= h;
      const double fd = (classical_loss(batch, plus) - classical_loss(batch, minus)) / (2 * h);
      EXPECT_LE(std::abs(g[j] - fd), 1e-7 * std::max(std::abs(fd), 1e-3)) << j;
    }
  }
}

TrainConfig baseline_config() {
  TrainConfig c;
  c.epochs = 20;
  c.batch_size = 64;
  c.learning_rate = 0.5;
  c.seed = 1;
  return c;
}

TEST(ClassicalTrain, CurveShape) {
  const auto c = baseline_config();
  const auto r = classical_train(c, gen_dataset(64, 2, 1), init_classical_kernel(1));
  ASSERT_EQ(r.curve.records.size(), 20u);
  for (const auto& rec : r.curve.records) EXPECT_TRUE(rec.mse >= 0 && rec.mse <= 1);
  EXPECT_LT(r.curve.records.back().mse, r.curve.records.front().mse);
}

TEST(ClassicalTrain, ZeroLearningRateIsFlat) {
  auto c = baseline_config();
  c.learning_rate = 0;
  const auto r = classical_train(c, gen_dataset(64, 2, 1), init_classical_kernel(1));
  for (const auto& rec : r.curve.records) EXPECT_EQ(rec.mse, r.curve.records.front().mse);
}

TEST(ClassicalTrain, Deterministic) {
  auto c = baseline_config();
  c.fresh_batches = true;
  const auto a = classical_train(c, {}, init_classical_kernel(5));
  const auto b = classical_train(c, {}, init_classical_kernel(5));
  for (std::size_t i = 0; i < a.curve.records.size(); ++i) EXPECT_EQ(a.curve.records[i].mse, b.curve.records[i].mse);
  EXPECT_EQ(a.kernel.weights, b.kernel.weights);
}

TEST(ClassicalTrain, RejectsEmpty) {
  EXPECT_THROW(classical_train(baseline_config(), {}, ClassicalKernel{}), std::invalid_argument);
  auto c = baseline_config();
  c.learning_rate = -1;
  EXPECT_THROW(classical_train(c, gen_dataset(4, 2, 1), ClassicalKernel{}), std::invalid_argument);
}

}  // namespace
}  // namespace qcnn

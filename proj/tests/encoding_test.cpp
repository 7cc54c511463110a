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

#include <cmath>
#include <numbers>
#include <vector>

#include "qcnn/core/pure_state.hpp"
#include "qcnn/encoding.hpp"

namespace qcnn {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PixelToAngle, Examples) {
  EXPECT_EQ(pixel_to_angle(0), 0.0);
  EXPECT_DOUBLE_EQ(pixel_to_angle(255), kPi);
  EXPECT_DOUBLE_EQ(pixel_to_angle(125), 125 * kPi / 255);
}

TEST(PixelToAngle, RejectsOutOfRange) {
  EXPECT_THROW(pixel_to_angle(-1), std::invalid_argument);
  EXPECT_THROW(pixel_to_angle(256), std::invalid_argument);
}

TEST(PixelToAngle, StrictlyMonotoneAndLinear) {
  for (int p = 1; p <= 255; ++p) EXPECT_LT(pixel_to_angle(p - 1), pixel_to_angle(p));
  for (int a = 0; a <= 255; a += 5)
    for (int b = 0; a + b <= 255; b += 7)
      EXPECT_NEAR(pixel_to_angle(a) + pixel_to_angle(b), pixel_to_angle(a + b), 1e-12);
}

TEST(EncodeImage, TwoByTwoExample) {
  const std::vector<int> img{0, 125, 200, 255};
  const auto prefix = encode_image(img);
  ASSERT_EQ(prefix.size(), 4u);
  const double want[4] = {0, 125 * kPi / 255, 200 * kPi / 255, kPi};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(prefix[k].kind, GateKind::RY);
    EXPECT_EQ(prefix[k].wires[0], k);
    EXPECT_DOUBLE_EQ(prefix[k].angle, want[k]);
  }
}

TEST(EncodeImage, AllZeroLeavesGroundState) {
  PureState s(4);
  for (const auto& g : encode_image(std::vector<int>(4, 0))) s.apply(g);
  EXPECT_EQ(s.amplitudes()[0], Complex(1, 0));
  for (std::size_t i = 1; i < 16; ++i) EXPECT_EQ(s.amplitudes()[i], Complex(0, 0));
}

TEST(EncodeImage, AllMaxGivesOneOnEveryWire) {
  PureState s(4);
  for (const auto& g : encode_image(std::vector<int>(4, 255))) s.apply(g);
  for (Wire w = 0; w < 4; ++w) EXPECT_NEAR(exact_prob_one(s, w), 1.0, 1e-15);
}

TEST(EncodeImage, PrefixBindsDataSlots) {
  const auto ops = encoding_prefix(16);
  ASSERT_EQ(ops.size(), 16u);
  for (std::size_t k = 0; k < 16; ++k) {
    EXPECT_EQ(ops[k].wires[0], k);
    EXPECT_EQ(std::get<DataSlot>(ops[k].angle).index, k);
  }
}

TEST(ProbToAngle, ExamplesAndRange) {
  EXPECT_EQ(prob_to_angle(0), 0.0);
  EXPECT_DOUBLE_EQ(prob_to_angle(1), kPi);
  EXPECT_DOUBLE_EQ(prob_to_angle(0.5), kPi / 2);
  EXPECT_THROW(prob_to_angle(-1e-9), std::invalid_argument);
  EXPECT_THROW(prob_to_angle(1.0 + 1e-9), std::invalid_argument);
  EXPECT_THROW(prob_to_angle(std::nan("")), std::invalid_argument);
}

TEST(Encoding, ProbabilityRoundTripClosedForm) {
  for (int p = 0; p <= 255; ++p) {
    const auto s = apply_gate(PureState(1), Gate{GateKind::RY, {0, 0}, pixel_to_angle(p)});
    EXPECT_NEAR(exact_prob_one(s, 0), std::pow(std::sin(kPi * p / 510), 2), 1e-12) << p;
  }
}

TEST(AngleImage, RowMajorAndBounded) {
  const std::vector<int> px{0, 255, 17, 128, 3, 9};
  const auto img = to_angle_image(px, 3, 2);
  ASSERT_EQ(img.angles.size(), 6u);
  for (std::size_t k = 0; k < px.size(); ++k) {
    EXPECT_GE(img.angles[k], 0.0);
    EXPECT_LE(img.angles[k], kPi);
    EXPECT_DOUBLE_EQ(img.angles[k], pixel_to_angle(px[k]));
  }
  EXPECT_THROW(to_angle_image(px, 2, 2), std::invalid_argument);
}

}  // namespace
}  // namespace qcnn

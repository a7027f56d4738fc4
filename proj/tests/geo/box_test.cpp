// Copyright 2026 The FMARS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fmars/geo/box.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fmars/core/error.hpp"

namespace fmars::geo {
namespace {

TEST(BoxIouTest, IdenticalBoxes) {
  const PixelBox a{3, 4, 10, 12};
  EXPECT_DOUBLE_EQ(box_iou(a, a), 1.0);
}

TEST(BoxIouTest, DisjointBoxes) {
  EXPECT_DOUBLE_EQ(box_iou({0, 0, 1, 1}, {5, 5, 6, 6}), 0.0);
}

TEST(BoxIouTest, PartialOverlap) {
  // Intersection 1, union 4 + 4 - 1 = 7.
  EXPECT_NEAR(box_iou({0, 0, 2, 2}, {1, 1, 3, 3}), 1.0 / 7.0, 1e-12);
}

TEST(BoxIouTest, TouchingEdgesDoNotOverlap) {
  EXPECT_DOUBLE_EQ(box_iou({0, 0, 2, 2}, {2, 0, 4, 2}), 0.0);
}

TEST(BoxIouTest, PropertiesOnRandomBoxes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0, 100);
  std::uniform_real_distribution<double> ext(0.5, 40);
  for (int i = 0; i < 5000; ++i) {
    const double ax = pos(rng), ay = pos(rng), bx = pos(rng), by = pos(rng);
    const PixelBox a{ax, ay, ax + ext(rng), ay + ext(rng)};
    const PixelBox b{bx, by, bx + ext(rng), by + ext(rng)};
    const double ab = box_iou(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_DOUBLE_EQ(ab, box_iou(b, a));
    EXPECT_DOUBLE_EQ(box_iou(a, a), 1.0);
  }
}

TEST(BoxTest, MakeBoxRejectsDegenerate) {
  EXPECT_THROW(make_box(1, 1, 1, 2), InputError);
  EXPECT_THROW(make_box(1, 3, 2, 2), InputError);
  EXPECT_NO_THROW(make_box(0, 0, 1, 1));
}

TEST(BoxTest, ClampToBounds) {
  const auto c = clamp_box({-5, 10, 20, 40}, 16, 32);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (PixelBox{0, 10, 16, 32}));
  EXPECT_FALSE(clamp_box({20, 20, 30, 30}, 16, 16).has_value());
}

}  // namespace
}  // namespace fmars::geo

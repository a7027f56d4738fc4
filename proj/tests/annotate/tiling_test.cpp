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


#include <gtest/gtest.h>

#include "fmars/annotate/tiling.hpp"
#include "fmars/core/error.hpp"

namespace fmars::annotate {
namespace {

TEST(Tiling, GridLayout) {
  const auto tiles = plan_tiles(1024, 1024, {512, 128});
  ASSERT_EQ(tiles.size(), 9u);
  EXPECT_EQ(tiles[1].x0, 384);
  EXPECT_EQ(tiles[2].x0, 512);
  EXPECT_EQ(tiles[2].x0 + tiles[2].width, 1024);
  EXPECT_EQ(tiles[3].y0, 384);
  for (std::size_t i = 0; i < tiles.size(); ++i) EXPECT_EQ(tiles[i].index, i);
}

TEST(Tiling, DefaultConfigAndSmallImages) {
  EXPECT_EQ(plan_tiles(1024, 1024, {}).size(), 1u);
  const auto small = plan_tiles(300, 200, {});
  ASSERT_EQ(small.size(), 1u);
  EXPECT_EQ(small[0].width, 300);
  EXPECT_EQ(small[0].height, 200);
  // (5000 - 1024) / 896 -> starts 0, 896, ..., 3584, then 3976.
  EXPECT_EQ(plan_tiles(5000, 1024, {}).size(), 6u);
  EXPECT_THROW(plan_tiles(10, 10, {64, 64}), InputError);
  EXPECT_THROW(plan_tiles(0, 10, {}), InputError);
}

TEST(Tiling, CoresPartitionTheImage) {
  for (auto [w, h, size, overlap] : {std::tuple{1024, 1024, 512, 128}, {1000, 700, 256, 32},
                                     {777, 1301, 300, 0}, {90, 50, 64, 16}}) {
    const auto tiles = plan_tiles(w, h, {size, overlap});
    for (int y = 0; y < h; y += 7) {
      for (int x = 0; x < w; x += 7) {
        int owners = 0;
        for (const TileWindow& t : tiles) {
          const geo::Point p{x + 0.5, y + 0.5};
          if (t.owns(p)) {
            ++owners;
            // The owner always holds the point inside its read window.
            EXPECT_GE(p.x, t.x0);
            EXPECT_LT(p.x, t.x0 + t.width);
            EXPECT_GE(p.y, t.y0);
            EXPECT_LT(p.y, t.y0 + t.height);
          }
        }
        ASSERT_EQ(owners, 1) << x << "," << y;
      }
    }
  }
}

TEST(Tiling, OwningTileClampsOutsidePoints) {
  const auto tiles = plan_tiles(1024, 1024, {512, 128});
  EXPECT_EQ(owning_tile(tiles, 1024, 1024, {-5, -5}), 0u);
  EXPECT_EQ(owning_tile(tiles, 1024, 1024, {2000, 2000}), 8u);
  EXPECT_EQ(owning_tile(tiles, 1024, 1024, {1024, 10}), 2u);
}

}  // namespace
}  // namespace fmars::annotate

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


#include <random>

#include <gtest/gtest.h>

#include "fmars/core/error.hpp"
#include "fmars/eval/run.hpp"
#include "fmars/eval/softmax.hpp"
#include "fmars/ingest/png.hpp"
#include "support/scratch_dir.hpp"

namespace fmars::eval {
namespace {

ScoreMap one_pixel(float roads, float veg, float buildings) {
  ScoreMap s(1, 1);
  s.at(0, 0, 0) = roads;
  s.at(1, 0, 0) = veg;
  s.at(2, 0, 0) = buildings;
  return s;
}

TEST(Softmax, ConfidentPixelKeepsClass) {
  EXPECT_EQ(threshold_softmax(one_pixel(0.95f, 0.03f, 0.02f), 0.9).at(0, 0), 1);
  EXPECT_EQ(threshold_softmax(one_pixel(0.02f, 0.03f, 0.95f), 0.9).at(0, 0), 3);
}

TEST(Softmax, UnconfidentPixelIsBackground) {
  EXPECT_EQ(threshold_softmax(one_pixel(0.6f, 0.3f, 0.1f), 0.9).at(0, 0), 0);
  EXPECT_EQ(threshold_softmax(one_pixel(0.0f, 0.0f, 0.0f), 0.9).at(0, 0), 0);
}

TEST(Softmax, ThresholdIsInclusive) {
  EXPECT_EQ(threshold_softmax(one_pixel(0.0f, 0.5f, 0.25f), 0.5).at(0, 0), 2);
}

TEST(Softmax, ZeroTauIsArgmax) {
  std::mt19937 rng(10);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  ScoreMap s(100, 100);
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      float v[3] = {u(rng), u(rng), u(rng)};
      // Occasional exact ties.
      if ((x + y) % 37 == 0) v[2] = v[0];
      const float sum = v[0] + v[1] + v[2];
      const float scale = u(rng);
      for (int c = 0; c < 3; ++c) s.at(c, x, y) = v[c] / sum * scale;
    }
  }
  const auto lab = threshold_softmax(s, 0.0);
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      int best = 0;
      for (int c = 1; c < 3; ++c) {
        if (s.at(c, x, y) > s.at(best, x, y)) best = c;
      }
      ASSERT_EQ(lab.at(x, y), best + 1) << x << "," << y;
    }
  }
}

TEST(Softmax, RejectsMalformedScores) {
  EXPECT_THROW(threshold_softmax(one_pixel(0.7f, 0.4f, 0.0f), 0.5), InputError);
  EXPECT_THROW(threshold_softmax(one_pixel(-0.1f, 0.4f, 0.0f), 0.5), InputError);
  EXPECT_THROW(threshold_softmax(one_pixel(std::nanf(""), 0.4f, 0.0f), 0.5), InputError);
  EXPECT_THROW(threshold_softmax(one_pixel(0.1f, 0.1f, 0.1f), 1.5), InputError);
  EXPECT_THROW(threshold_softmax(one_pixel(0.1f, 0.1f, 0.1f), -0.1), InputError);
  EXPECT_NO_THROW(threshold_softmax(one_pixel(0.5f, 0.25f, 0.25f + 5e-7f), 0.5));
}

TEST(Softmax, ScoreMapFileRoundTrip) {
  testing::ScratchDir dir;
  ScoreMap s(3, 2);
  for (std::size_t i = 0; i < s.data.size(); ++i) s.data[i] = 0.01f * static_cast<float>(i);
  write_score_map(dir / "t.json", s);
  const ScoreMap back = read_score_map(dir / "t.json");
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.data, s.data);
  std::filesystem::resize_file(dir / "t.f32", 8);
  EXPECT_THROW(read_score_map(dir / "t.json"), InputError);
}

geo::LabelRaster grid4(std::initializer_list<int> v) {
  geo::LabelRaster g(4, 4);
  std::size_t i = 0;
  for (int x : v) g.data[i++] = static_cast<std::uint8_t>(x);
  return g;
}

// Three off-diagonal pixels, one each in classes 0, 1 and 2.
const geo::LabelRaster kGt = grid4({0, 0, 1, 1,  //
                                    0, 0, 1, 1,  //
                                    2, 2, 3, 3,  //
                                    2, 2, 3, 3});
const geo::LabelRaster kPred = grid4({0, 1, 1, 1,  //
                                      0, 0, 1, 2,  //
                                      2, 2, 3, 3,  //
                                      0, 2, 3, 3});

struct Dirs {
  testing::ScratchDir root;
  std::filesystem::path gt = root / "gt";
  std::filesystem::path pred = root / "pred";
  Dirs() {
    std::filesystem::create_directories(gt);
    std::filesystem::create_directories(pred);
  }
};

TEST(EvalRun, HandComputedFixture) {
  Dirs d;
  for (const char* id : {"a", "b"}) {
    ingest::write_png_gray(d.gt / (std::string(id) + ".png"), kGt);
    ingest::write_png_gray(d.pred / (std::string(id) + ".png"), kPred);
  }
  const EvalReport r = eval_run(d.gt, d.pred, {0.9, 2, "fixture"});
  EXPECT_EQ(r.tiles, 2u);
  EXPECT_EQ(r.confusion.at(0, 0), 6u);
  EXPECT_EQ(r.confusion.at(0, 1), 2u);
  EXPECT_EQ(r.confusion.at(1, 2), 2u);
  EXPECT_EQ(r.confusion.at(2, 0), 2u);
  EXPECT_EQ(r.confusion.at(3, 3), 8u);
  // acc = 3/4, 3/4, 3/4, 1; iou = 3/5, 3/5, 3/5, 1.
  EXPECT_DOUBLE_EQ(r.metrics.m_acc, 0.8125);
  EXPECT_DOUBLE_EQ(r.metrics.m_iou, 0.7);
  const auto j = to_json(r);
  EXPECT_EQ(j["mAcc"], 81.25);
  EXPECT_EQ(j["mIoU"], 70.0);
  EXPECT_EQ(j["classes"]["roads"]["iou"], 60.0);
  const std::string table = format_table(r);
  EXPECT_NE(table.find("fixture"), std::string::npos);
  EXPECT_NE(table.find("81.25"), std::string::npos);
  EXPECT_NE(table.find("70.00"), std::string::npos);
}

TEST(EvalRun, SameDirectoryIsPerfect) {
  Dirs d;
  ingest::write_png_gray(d.gt / "t.png", kGt);
  const EvalReport r = eval_run(d.gt, d.gt);
  EXPECT_EQ(format_percent(r.metrics.m_iou), "100.00");
  EXPECT_EQ(format_percent(r.metrics.m_acc), "100.00");
}

TEST(EvalRun, ScoreMapPredictions) {
  Dirs d;
  ingest::write_png_gray(d.gt / "t.png", kGt);
  ScoreMap s(4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      const int c = kGt.at(x, y);
      if (c > 0) s.at(c - 1, x, y) = y == 0 ? 0.85f : 0.95f;
    }
  }
  write_score_map(d.pred / "t.json", s);
  // Roads in row 0 fall below 0.9 and become background.
  EvalReport r = eval_run(d.gt, d.pred, {0.9, 1, "p"});
  EXPECT_EQ(r.confusion.at(1, 0), 2u);
  r = eval_run(d.gt, d.pred, {0.8, 1, "p"});
  EXPECT_EQ(r.confusion.at(1, 1), 4u);
}

TEST(EvalRun, UnmatchedTilesListed) {
  Dirs d;
  ingest::write_png_gray(d.gt / "a.png", kGt);
  ingest::write_png_gray(d.gt / "b.png", kGt);
  ingest::write_png_gray(d.pred / "a.png", kGt);
  ingest::write_png_gray(d.pred / "c.png", kGt);
  try {
    eval_run(d.gt, d.pred);
    FAIL();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("no prediction for: b"), std::string::npos) << msg;
    EXPECT_NE(msg.find("no ground truth for: c"), std::string::npos) << msg;
  }
}

TEST(EvalRun, EmptyIntersectionAndBadInputs) {
  Dirs d;
  ingest::write_png_gray(d.gt / "a.png", kGt);
  ingest::write_png_gray(d.pred / "b.png", kGt);
  EXPECT_THROW(eval_run(d.gt, d.pred), InputError);
  EXPECT_THROW(eval_run(d.gt, d.root / "missing"), InputError);
  std::filesystem::remove(d.pred / "b.png");
  ingest::write_png_gray(d.pred / "a.png", geo::LabelRaster(3, 3));
  EXPECT_THROW(eval_run(d.gt, d.pred), InputError);
  EXPECT_THROW(eval_run(d.gt, d.gt, {1.5, 1, "x"}), InputError);
}

}  // namespace
}  // namespace fmars::eval

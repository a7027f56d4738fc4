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


// Open-set decoding of per-pixel class scores.
//
// Score map fixture: JSON header
//   {"format":"fmars-score-map","version":1,"width":W,"height":H,
//    "classes":["roads","high_vegetation","buildings"],"data":"<file>"}
// next to raw little-endian float32 planes, one per listed class, each
// row-major W*H.

#pragma once

#include <filesystem>
#include <vector>

#include "fmars/geo/image.hpp"

namespace fmars::eval {

/// Scores for the non-background classes; plane c holds class id c + 1.
struct ScoreMap {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // (kClasses - 1) planes of width * height

  ScoreMap() = default;
  ScoreMap(int w, int h);

  float& at(int plane, int x, int y);
  float at(int plane, int x, int y) const;
};

/// Each pixel takes the highest-scoring class if that score is >= tau,
/// else Background. Ties go to the lower class id. Throws InputError if
/// tau is outside [0, 1] or a pixel has a score outside [0, 1] or scores
/// summing above 1 + 1e-6.
geo::LabelRaster threshold_softmax(const ScoreMap& scores, double tau);

void write_score_map(const std::filesystem::path& header_path, const ScoreMap& scores);
ScoreMap read_score_map(const std::filesystem::path& header_path);

}  // namespace fmars::eval

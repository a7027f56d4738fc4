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

#pragma once

#include <optional>
#include <string>

namespace fmars::geo {

/// Half-open pixel-space box [x0,x1) x [y0,y1). Coordinates are real-valued:
/// prompts derived from world geometry rarely land on pixel corners.
struct PixelBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool valid() const { return x1 > x0 && y1 > y0; }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

/// Throws InputError unless x1 > x0 and y1 > y0 (and all finite).
PixelBox make_box(double x0, double y0, double x1, double y1);

/// Intersection with [0,width) x [0,height); nullopt if nothing remains.
std::optional<PixelBox> clamp_box(const PixelBox& box, double width,
                                  double height);

/// Intersection area over union area, in [0,1]. Symmetric.
double box_iou(const PixelBox& a, const PixelBox& b);

/// Detector output: a box with its score and the phrase that produced it.
struct ScoredBox {
  PixelBox box;
  double score = 0.0;
  std::string phrase;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

}  // namespace fmars::geo

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


// Detector and segmenter contracts shared by the mock and remote backends.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "fmars/geo/box.hpp"
#include "fmars/geo/image.hpp"
#include "fmars/geo/rle.hpp"

namespace fmars::backends {

struct DetectorRequest {
  geo::RgbImage tile;
  std::string prompt;
  double box_threshold = 0.12;
  double text_threshold = 0.3;

  /// Throws InputError for thresholds outside [0,1], an empty prompt or tile.
  void validate() const;
};

struct SegmentRequest {
  geo::RgbImage tile;
  std::vector<geo::PixelBox> boxes;  // tile-local, clamped to the tile
  bool multimask = false;
};

/// Clamps every box to the tile. Throws InputError if a box misses the tile
/// entirely or the list is empty.
SegmentRequest make_segment_request(geo::RgbImage tile, std::span<const geo::PixelBox> boxes,
                                    bool multimask = false);

struct SegmentedMask {
  geo::MaskRLE mask;  // tile-sized
  double confidence = 0.0;

  friend bool operator==(const SegmentedMask&, const SegmentedMask&) = default;
};

/// One entry per request box, in request order.
struct SegmentResult {
  std::vector<SegmentedMask> masks;
};

/// Index of the highest-confidence candidate; the first wins ties.
/// Throws InputError on an empty list.
std::size_t select_best(std::span<const SegmentedMask> candidates);

/// Implementations must be callable concurrently.
class Detector {
 public:
  virtual ~Detector() = default;
  /// Boxes with score >= box_threshold, in tile-local pixels.
  virtual std::vector<geo::ScoredBox> detect(const DetectorRequest& req) const = 0;
};

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual SegmentResult segment(const SegmentRequest& req) const = 0;
};

}  // namespace fmars::backends

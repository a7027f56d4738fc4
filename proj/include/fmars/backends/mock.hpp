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


// Deterministic stand-ins for the detector and segmenter. Both are pure
// functions of the tile bytes and request parameters.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fmars/backends/backend.hpp"
#include "json.hpp"

namespace fmars::backends {

/// Detector fixture: boxes keyed by tile_hash(). An empty phrase matches any
/// prompt; otherwise the phrase must equal the prompt.
using DetectorFixture = std::map<std::string, std::vector<geo::ScoredBox>>;

/// {"tiles": {"<hash>": [{"x0":..,"y0":..,"x1":..,"y1":..,"score":..,"phrase":".."}]}}
DetectorFixture load_detector_fixture(const std::filesystem::path& path);
DetectorFixture parse_detector_fixture(const nlohmann::json& j);
nlohmann::json detector_fixture_to_json(const DetectorFixture& fixture);

class MockDetector final : public Detector {
 public:
  explicit MockDetector(DetectorFixture fixture) : fixture_(std::move(fixture)) {}

  /// Fixture boxes of the tile with score >= box_threshold, fixture order.
  std::vector<geo::ScoredBox> detect(const DetectorRequest& req) const override;

 private:
  DetectorFixture fixture_;
};

/// Pixels whose centers fall inside `box`, shrunk by `erode` pixels on every
/// side, clipped to the tile.
geo::BinaryMask box_mask(const geo::PixelBox& box, int width, int height, int erode);

class MockSegmenter final : public Segmenter {
 public:
  static constexpr double kConfidence = 0.9;

  /// Single-mask mode: box interior eroded by 1 px, confidence 0.9.
  /// Multimask mode: candidates eroded by 0/1/2 px with confidences
  /// 0.85/0.9/0.7; select_best() resolves them to the single-mask answer.
  SegmentResult segment(const SegmentRequest& req) const override;

  std::vector<SegmentedMask> candidates(const geo::PixelBox& box, int width, int height) const;
};

}  // namespace fmars::backends

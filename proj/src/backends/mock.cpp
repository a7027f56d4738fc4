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


#include "fmars/backends/mock.hpp"

#include <algorithm>
#include <cmath>

#include "fmars/backends/hash.hpp"
#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::backends {

using nlohmann::json;

DetectorFixture parse_detector_fixture(const json& j) {
  DetectorFixture out;
  try {
    for (const auto& [hash, boxes] : j.at("tiles").items()) {
      auto& list = out[hash];
      for (const json& b : boxes) {
        list.push_back({geo::make_box(b.at("x0").get<double>(), b.at("y0").get<double>(),
                                      b.at("x1").get<double>(), b.at("y1").get<double>()),
                        b.at("score").get<double>(), b.value("phrase", "")});
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed detector fixture: ") + e.what());
  }
  return out;
}

DetectorFixture load_detector_fixture(const std::filesystem::path& path) {
  return parse_detector_fixture(ingest::read_json_file(path));
}

json detector_fixture_to_json(const DetectorFixture& fixture) {
  json tiles = json::object();
  for (const auto& [hash, boxes] : fixture) {
    json list = json::array();
    for (const geo::ScoredBox& b : boxes) {
      list.push_back({{"x0", b.box.x0}, {"y0", b.box.y0}, {"x1", b.box.x1},
                      {"y1", b.box.y1}, {"score", b.score}, {"phrase", b.phrase}});
    }
    tiles[hash] = std::move(list);
  }
  return {{"tiles", std::move(tiles)}};
}

std::vector<geo::ScoredBox> MockDetector::detect(const DetectorRequest& req) const {
  req.validate();
  std::vector<geo::ScoredBox> out;
  auto it = fixture_.find(tile_hash(req.tile));
  if (it == fixture_.end()) return out;
  for (const geo::ScoredBox& b : it->second) {
    if (b.score < req.box_threshold) continue;
    if (!b.phrase.empty() && b.phrase != req.prompt) continue;
    out.push_back({b.box, b.score, req.prompt});
  }
  return out;
}

geo::BinaryMask box_mask(const geo::PixelBox& box, int width, int height, int erode) {
  geo::BinaryMask mask(width, height);
  // Column c is covered when x0 <= c + 0.5 < x1.
  const auto first = [](double v) { return static_cast<long long>(std::ceil(v - 0.5)); };
  const long long c0 = std::max<long long>(first(box.x0) + erode, 0);
  const long long c1 = std::min<long long>(first(box.x1) - erode, width);
  const long long r0 = std::max<long long>(first(box.y0) + erode, 0);
  const long long r1 = std::min<long long>(first(box.y1) - erode, height);
  for (long long r = r0; r < r1; ++r) {
    for (long long c = c0; c < c1; ++c) mask.at(static_cast<int>(c), static_cast<int>(r)) = 1;
  }
  return mask;
}

std::vector<SegmentedMask> MockSegmenter::candidates(const geo::PixelBox& box, int width,
                                                     int height) const {
  return {{geo::rle_encode(box_mask(box, width, height, 0)), 0.85},
          {geo::rle_encode(box_mask(box, width, height, 1)), kConfidence},
          {geo::rle_encode(box_mask(box, width, height, 2)), 0.7}};
}

SegmentResult MockSegmenter::segment(const SegmentRequest& req) const {
  if (req.boxes.empty()) throw InputError("segment request without boxes");
  SegmentResult result;
  result.masks.reserve(req.boxes.size());
  for (const geo::PixelBox& box : req.boxes) {
    if (req.multimask) {
      auto cands = candidates(box, req.tile.width, req.tile.height);
      result.masks.push_back(std::move(cands[select_best(cands)]));
    } else {
      result.masks.push_back(
          {geo::rle_encode(box_mask(box, req.tile.width, req.tile.height, 1)), kConfidence});
    }
  }
  return result;
}

}  // namespace fmars::backends

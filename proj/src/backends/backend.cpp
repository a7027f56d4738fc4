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


#include "fmars/backends/backend.hpp"

#include "fmars/core/error.hpp"

namespace fmars::backends {

void DetectorRequest::validate() const {
  if (tile.width <= 0 || tile.height <= 0) throw InputError("detector request without pixels");
  if (prompt.empty()) throw InputError("detector request without prompt");
  if (!(box_threshold >= 0.0 && box_threshold <= 1.0)) {
    throw InputError("box_threshold must be in [0,1]");
  }
  if (!(text_threshold >= 0.0 && text_threshold <= 1.0)) {
    throw InputError("text_threshold must be in [0,1]");
  }
}

SegmentRequest make_segment_request(geo::RgbImage tile, std::span<const geo::PixelBox> boxes,
                                    bool multimask) {
  if (boxes.empty()) throw InputError("segment request needs at least one box");
  SegmentRequest req{std::move(tile), {}, multimask};
  req.boxes.reserve(boxes.size());
  for (const geo::PixelBox& b : boxes) {
    auto clamped = geo::clamp_box(b, req.tile.width, req.tile.height);
    if (!clamped) throw InputError("segment box lies outside the tile");
    req.boxes.push_back(*clamped);
  }
  return req;
}

std::size_t select_best(std::span<const SegmentedMask> candidates) {
  if (candidates.empty()) throw InputError("no mask candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].confidence > candidates[best].confidence) best = i;
  }
  return best;
}

}  // namespace fmars::backends

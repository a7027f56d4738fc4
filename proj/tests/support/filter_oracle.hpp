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


// Reference implementation of detector box filtering for tests. Works on
// integer-valued boxes with rational thresholds so every comparison is exact,
// and characterizes greedy NMS as the unique self-consistent keep set
// instead of simulating the greedy loop.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmars/geo/box.hpp"

namespace fmars::testing {

struct OracleParams {
  double box_threshold = 0.12;
  // IoU >= nms_num / nms_den suppresses.
  std::int64_t nms_num = 1, nms_den = 2;
  // min/max < aspect_num / aspect_den drops.
  std::int64_t aspect_num = 1, aspect_den = 2;
  // width * height > max_area_px drops.
  std::int64_t max_area_px = 28000;
};

struct IntBox {
  std::int64_t x0, y0, x1, y1;
};

inline IntBox to_int_box(const geo::PixelBox& b) {
  const IntBox r{static_cast<std::int64_t>(b.x0), static_cast<std::int64_t>(b.y0),
                 static_cast<std::int64_t>(b.x1), static_cast<std::int64_t>(b.y1)};
  if (static_cast<double>(r.x0) != b.x0 || static_cast<double>(r.y0) != b.y0 ||
      static_cast<double>(r.x1) != b.x1 || static_cast<double>(r.y1) != b.y1) {
    throw std::invalid_argument("oracle boxes must have integer coordinates");
  }
  return r;
}

// IoU(a, b) >= num / den, in integers.
inline bool iou_at_least(const IntBox& a, const IntBox& b, std::int64_t num, std::int64_t den) {
  const std::int64_t iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const std::int64_t ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  const std::int64_t inter = iw > 0 && ih > 0 ? iw * ih : 0;
  const std::int64_t uni =
      (a.x1 - a.x0) * (a.y1 - a.y0) + (b.x1 - b.x0) * (b.y1 - b.y0) - inter;
  return inter * den >= num * uni;
}

/// Indices into `boxes` that survive filtering, in output order. At most 20
/// boxes may pass the score threshold.
inline std::vector<std::size_t> reference_filter(const std::vector<geo::ScoredBox>& boxes,
                                                 const OracleParams& p) {
  std::vector<std::size_t> cand;
  std::vector<IntBox> ib;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const IntBox b = to_int_box(boxes[i].box);
    if (boxes[i].score >= p.box_threshold && b.x1 > b.x0 && b.y1 > b.y0) {
      cand.push_back(i);
      ib.push_back(b);
    }
  }
  const std::size_t n = cand.size();
  if (n > 20) throw std::invalid_argument("too many candidates for exhaustive search");
  auto outranks = [&](std::size_t a, std::size_t b) {
    const double sa = boxes[cand[a]].score, sb = boxes[cand[b]].score;
    return sa > sb || (sa == sb && cand[a] < cand[b]);
  };
  // threat[c]: higher-ranked candidates that would suppress c if kept.
  std::vector<std::uint32_t> threat(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s != c && outranks(s, c) && iou_at_least(ib[s], ib[c], p.nms_num, p.nms_den)) {
        threat[c] |= 1u << s;
      }
    }
  }
  // The greedy result is the unique S with: c in S iff no member of S threatens c.
  std::vector<std::uint32_t> fixed_points;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (std::size_t c = 0; c < n && ok; ++c) {
      ok = (((s >> c) & 1u) != 0) == ((s & threat[c]) == 0);
    }
    if (ok) fixed_points.push_back(s);
  }
  if (fixed_points.size() != 1) throw std::logic_error("NMS fixed point is not unique");
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < n; ++c) {
    if (((fixed_points[0] >> c) & 1u) == 0) continue;
    const std::int64_t w = ib[c].x1 - ib[c].x0, h = ib[c].y1 - ib[c].y0;
    if (std::min(w, h) * p.aspect_den < p.aspect_num * std::max(w, h)) continue;
    if (w * h > p.max_area_px) continue;
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) { return outranks(a, b); });
  for (std::size_t& k : kept) k = cand[k];
  return kept;
}

/// Random integer box sets biased toward the filter's decision boundaries:
/// tied scores, the score threshold, IoU exactly one half, aspect exactly one
/// half and area exactly 28000 px. Each phrase is the box's index.
inline std::vector<geo::ScoredBox> random_box_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 14);
  std::uniform_int_distribution<int> pos(0, 300);
  std::uniform_int_distribution<int> side(1, 240);
  std::uniform_int_distribution<int> mode(0, 7);
  std::uniform_int_distribution<int> score_hundredths(8, 30);
  std::vector<geo::ScoredBox> out;
  const int n = count(rng);
  while (static_cast<int>(out.size()) < n) {
    const double x = pos(rng), y = pos(rng);
    double w = side(rng), h = side(rng);
    switch (mode(rng)) {
      case 0: h = std::max(1.0, std::floor(w / 2)); break;
      case 1: w = 200, h = 140; break;
      case 2: w = 201, h = 140; break;
      case 3: w = 175, h = 160; break;
      default: break;
    }
    geo::ScoredBox b{{x, y, x + w, y + h}, score_hundredths(rng) / 100.0, ""};
    if (!out.empty() && mode(rng) < 3) {
      // Copy shifted by a third of its width: IoU exactly 1/2 when the
      // width is a multiple of 3.
      const geo::PixelBox src = out[rng() % out.size()].box;
      const double dx = std::floor(src.width() / 3);
      b.box = {src.x0 + dx, src.y0, src.x1 + dx, src.y1};
      if (rng() % 4 == 0) b.box = src;
    }
    out.push_back(b);
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].phrase = std::to_string(i);
  return out;
}

}  // namespace fmars::testing

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


#include "fmars/annotate/tiling.hpp"

#include <algorithm>
#include <cmath>

#include "fmars/core/error.hpp"

namespace fmars::annotate {
namespace {

struct Span {
  int start;
  int length;
  double core_lo;
  double core_hi;
};

std::vector<Span> plan_axis(int extent, int size, int overlap) {
  std::vector<int> starts;
  if (extent <= size) {
    starts.push_back(0);
  } else {
    const int stride = size - overlap;
    for (int s = 0; s + size < extent; s += stride) starts.push_back(s);
    if (starts.back() != extent - size) starts.push_back(extent - size);
  }
  std::vector<Span> spans;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const int len = std::min(size, extent - starts[i]);
    spans.push_back({starts[i], len, 0.0, static_cast<double>(extent)});
  }
  for (std::size_t i = 1; i < spans.size(); ++i) {
    const double prev_end = spans[i - 1].start + spans[i - 1].length;
    const double mid = 0.5 * (spans[i].start + prev_end);
    spans[i - 1].core_hi = mid;
    spans[i].core_lo = mid;
  }
  return spans;
}

}  // namespace

void TilingConfig::validate() const {
  if (size <= 0) throw InputError("tile size must be positive");
  if (overlap < 0 || overlap >= size) throw InputError("tile overlap must be in [0, size)");
}

std::vector<TileWindow> plan_tiles(int width, int height, const TilingConfig& cfg) {
  cfg.validate();
  if (width <= 0 || height <= 0) throw InputError("image dimensions must be positive");
  const auto xs = plan_axis(width, cfg.size, cfg.overlap);
  const auto ys = plan_axis(height, cfg.size, cfg.overlap);
  std::vector<TileWindow> tiles;
  tiles.reserve(xs.size() * ys.size());
  for (const Span& y : ys) {
    for (const Span& x : xs) {
      tiles.push_back({tiles.size(), x.start, y.start, x.length, y.length, x.core_lo, y.core_lo,
                       x.core_hi, y.core_hi});
    }
  }
  return tiles;
}

std::size_t owning_tile(const std::vector<TileWindow>& tiles, int width, int height,
                        geo::Point px) {
  // Keep clamped points strictly inside the half-open extent.
  px.x = std::clamp(px.x, 0.0, std::nextafter(static_cast<double>(width), 0.0));
  px.y = std::clamp(px.y, 0.0, std::nextafter(static_cast<double>(height), 0.0));
  for (const TileWindow& t : tiles) {
    if (t.owns(px)) return t.index;
  }
  throw InputError("point is not owned by any tile");
}

}  // namespace fmars::annotate

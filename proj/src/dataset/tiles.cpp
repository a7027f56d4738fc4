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


#include "fmars/dataset/tiles.hpp"

#include <cmath>
#include <cstring>

#include "fmars/core/error.hpp"
#include "fmars/core/parallel.hpp"

namespace fmars::dataset {

std::string_view split_name(Split s) { return s == Split::kTest ? "test" : "train"; }

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw InputError("unknown split '" + std::string(name) + "'");
}

double label_entropy(std::span<const std::uint64_t> histogram) {
  std::uint64_t total = 0;
  for (std::uint64_t c : histogram) total += c;
  if (total == 0) throw InputError("entropy of an empty histogram");
  double h = 0.0;
  for (std::uint64_t c : histogram) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h > 0.0 ? h : 0.0;
}

ClassHistogram class_histogram(const geo::LabelRaster& labels) {
  ClassHistogram hist{};
  for (std::uint8_t v : labels.data) {
    if (v >= annotate::kNumClasses) {
      throw InputError("label value " + std::to_string(v) + " is not a class id");
    }
    ++hist[v];
  }
  return hist;
}

geo::LabelRaster GridLabelSource::read(int x0, int y0, int w, int h) const {
  if (x0 < 0 || y0 < 0 || x0 + w > labels_.width || y0 + h > labels_.height) {
    throw InputError("label window outside the grid");
  }
  geo::LabelRaster out(w, h);
  for (int y = 0; y < h; ++y) {
    const std::size_t offset = static_cast<std::size_t>(y0 + y) * labels_.width + x0;
    std::memcpy(&out.at(0, y), labels_.data.data() + offset, static_cast<std::size_t>(w));
  }
  return out;
}

std::vector<TileRecord> tile_image(const ImageRef& image, const LabelSource& labels,
                                   const TileOptions& opts) {
  if (opts.size <= 0) throw InputError("tile size must be positive");
  if (labels.width() != image.width || labels.height() != image.height) {
    throw InputError("label grid " + std::to_string(labels.width()) + "x" +
                     std::to_string(labels.height()) + " does not match image " +
                     image.image_id + " (" + std::to_string(image.width) + "x" +
                     std::to_string(image.height) + ")");
  }
  const int cols = image.width / opts.size;
  const int rows = image.height / opts.size;
  std::vector<TileRecord> out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  parallel_for(out.size(), opts.workers, [&](std::size_t i) {
    TileRecord& r = out[i];
    r.event_id = image.event_id;
    r.image_id = image.image_id;
    r.row = static_cast<int>(i / static_cast<std::size_t>(cols));
    r.col = static_cast<int>(i % static_cast<std::size_t>(cols));
    r.x0 = r.col * opts.size;
    r.y0 = r.row * opts.size;
    r.size = opts.size;
    r.resolution_m = image.resolution_m;
    const geo::LabelRaster tile = labels.read(r.x0, r.y0, opts.size, opts.size);
    r.histogram = class_histogram(tile);
    r.entropy_bits = label_entropy(r.histogram);
    if (opts.on_tile) opts.on_tile(r, tile);
  });
  return out;
}

}  // namespace fmars::dataset

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


// Fixed-size dataset tiles with per-class label histograms.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fmars/annotate/classes.hpp"
#include "fmars/annotate/semantic.hpp"
#include "fmars/geo/image.hpp"

namespace fmars::dataset {

using ClassHistogram = std::array<std::uint64_t, annotate::kNumClasses>;

enum class Split { kTrain, kTest };

std::string_view split_name(Split s);
Split parse_split(std::string_view name);

struct TileRecord {
  std::string event_id;
  std::string image_id;
  int row = 0;
  int col = 0;
  int x0 = 0;  // pixel window in the source image
  int y0 = 0;
  int size = 512;
  double resolution_m = 0.0;
  ClassHistogram histogram{};
  double entropy_bits = 0.0;
  Split split = Split::kTrain;

  friend bool operator==(const TileRecord&, const TileRecord&) = default;
};

/// Shannon entropy in bits over classes with a non-zero count, background
/// included. Throws InputError if every count is zero.
double label_entropy(std::span<const std::uint64_t> histogram);

/// Counts class ids; InputError on an id outside [0, kNumClasses).
ClassHistogram class_histogram(const geo::LabelRaster& labels);

/// Per-pixel labels for an image. read() must be safe to call concurrently.
class LabelSource {
 public:
  virtual ~LabelSource() = default;
  virtual int width() const = 0;
  virtual int height() const = 0;
  virtual geo::LabelRaster read(int x0, int y0, int w, int h) const = 0;
};

/// Labels held in memory.
class GridLabelSource final : public LabelSource {
 public:
  explicit GridLabelSource(geo::LabelRaster labels) : labels_(std::move(labels)) {}
  int width() const override { return labels_.width; }
  int height() const override { return labels_.height; }
  geo::LabelRaster read(int x0, int y0, int w, int h) const override;

 private:
  geo::LabelRaster labels_;
};

/// Labels rendered on demand from instance annotations.
class RenderedLabelSource final : public LabelSource {
 public:
  RenderedLabelSource(std::span<const annotate::InstanceAnnotation> instances,
                      const geo::AffineTransform& t, int width, int height)
      : renderer_(instances, t), width_(width), height_(height) {}
  int width() const override { return width_; }
  int height() const override { return height_; }
  geo::LabelRaster read(int x0, int y0, int w, int h) const override {
    return renderer_.render({x0, y0, w, h});
  }

 private:
  annotate::SemanticRenderer renderer_;
  int width_;
  int height_;
};

struct ImageRef {
  std::string event_id;
  std::string image_id;
  int width = 0;
  int height = 0;
  double resolution_m = 0.0;
};

struct TileOptions {
  int size = 512;
  std::size_t workers = 0;
  /// Called once per tile with its labels, possibly from several threads.
  std::function<void(const TileRecord&, const geo::LabelRaster&)> on_tile;
};

/// Non-overlapping size x size grid from the top-left corner; partial tiles
/// at the right and bottom edges are dropped. Records are in row-major order.
/// Throws InputError if the label grid does not match the image size.
std::vector<TileRecord> tile_image(const ImageRef& image, const LabelSource& labels,
                                   const TileOptions& opts = {});

}  // namespace fmars::dataset

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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "fmars/geo/affine.hpp"
#include "fmars/geo/image.hpp"
#include "fmars/geo/polygon.hpp"

namespace fmars::ingest {

/// Result of a windowed read. Pixels outside the image are zero.
struct Window {
  geo::RgbImage pixels;
  bool out_of_bounds = false;  // true if any part of the window was outside
};

/// Backing store of a raster: reads an in-bounds rectangle into `dst`
/// (row stride `dst_stride` bytes). Implementations must tolerate concurrent
/// calls.
class PixelSource {
 public:
  virtual ~PixelSource() = default;
  virtual void read(int x0, int y0, int w, int h, std::uint8_t* dst,
                    std::size_t dst_stride) const = 0;
};

/// Georeferenced 8-bit RGB raster with lazy windowed access. Copies share
/// the same backing store.
class GeoRaster {
 public:
  GeoRaster(int width, int height, geo::AffineTransform transform,
            std::shared_ptr<const PixelSource> source);

  int width() const { return width_; }
  int height() const { return height_; }
  const geo::AffineTransform& transform() const { return transform_; }
  double resolution_m() const { return transform_.resolution_m(); }

  /// World-space bounding box of the image footprint.
  geo::Bounds world_extent() const;

  /// Always returns exactly w x h pixels. Thread-safe and idempotent.
  Window read_window(int x0, int y0, int w, int h) const;

 private:
  int width_;
  int height_;
  geo::AffineTransform transform_;
  std::shared_ptr<const PixelSource> source_;
};

struct RasterOptions {
  /// Meters per pixel. Required for GeoTIFFs in geographic CRSs; overrides
  /// the value derived from the file otherwise.
  std::optional<double> resolution_m;
};

/// Opens a GeoTIFF (.tif/.tiff) or a fixture raster (.json header).
/// Throws InputError for missing georeferencing or a non-RGB8 layout.
GeoRaster open_raster(const std::filesystem::path& path,
                      const RasterOptions& opts = {});

/// In-memory raster, mainly for tests and synthetic data.
GeoRaster make_memory_raster(geo::RgbImage image, geo::AffineTransform transform);

/// Fixture format: JSON header
///   {"format":"fmars-fixture-raster","version":1,"width":W,"height":H,
///    "bands":3,"transform":[a,b,c,d,e,f],"resolution_m":R,"data":"<file>"}
/// next to a raw interleaved RGB8 file, row-major, no padding. `pixel`
/// fills one row at a time (row index, W*3 bytes).
using RowGenerator = std::function<void(int row, std::span<std::uint8_t> rgb)>;
void write_fixture_raster(const std::filesystem::path& header_path, int width,
                          int height, const geo::AffineTransform& transform,
                          const RowGenerator& generator);

/// Opens a GeoTIFF. Exposed for callers that know the format.
GeoRaster open_geotiff(const std::filesystem::path& path, const RasterOptions& opts);

/// Registers the GeoTIFF georeferencing tags with libtiff. Idempotent.
void register_geotiff_tags();

}  // namespace fmars::ingest

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

// Read-only GeoTIFF access on top of libtiff.
//
// Only what the pipeline needs: 8-bit, 3-sample, chunky RGB, striped or
// tiled, georeferenced with ModelTransformation or PixelScale + Tiepoint.

#include <tiffio.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fmars/core/error.hpp"
#include "fmars/ingest/raster.hpp"

namespace fmars::ingest {
namespace {

constexpr ttag_t kModelPixelScale = 33550;
constexpr ttag_t kModelTiepoint = 33922;
constexpr ttag_t kModelTransformation = 34264;
constexpr ttag_t kGeoKeyDirectory = 34735;
constexpr ttag_t kGeoDoubleParams = 34736;
constexpr ttag_t kGeoAsciiParams = 34737;

constexpr int kGTModelTypeGeoKey = 1024;
constexpr int kGTRasterTypeGeoKey = 1025;
constexpr int kProjLinearUnitsGeoKey = 3076;
constexpr int kModelTypeGeographic = 2;
constexpr int kRasterPixelIsPoint = 2;

const TIFFFieldInfo kGeoFields[] = {
    {kModelPixelScale, -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelPixelScaleTag")},
    {kModelTiepoint, -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelTiepointTag")},
    {kModelTransformation, -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelTransformationTag")},
    {kGeoKeyDirectory, -1, -1, TIFF_SHORT, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("GeoKeyDirectoryTag")},
    {kGeoDoubleParams, -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("GeoDoubleParamsTag")},
    {kGeoAsciiParams, -1, -1, TIFF_ASCII, FIELD_CUSTOM, 1, 0,
     const_cast<char*>("GeoAsciiParamsTag")},
};

TIFFExtendProc g_parent_extender = nullptr;

void geotiff_extender(TIFF* tif) {
  TIFFMergeFieldInfo(tif, kGeoFields, sizeof(kGeoFields) / sizeof(kGeoFields[0]));
  if (g_parent_extender) g_parent_extender(tif);
}

void silence_libtiff(const char*, const char*, va_list) {}

struct TiffCloser {
  void operator()(TIFF* t) const { TIFFClose(t); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

std::optional<std::vector<double>> get_doubles(TIFF* tif, ttag_t tag) {
  uint16_t count = 0;
  double* values = nullptr;
  if (TIFFGetField(tif, tag, &count, &values) != 1 || values == nullptr) return std::nullopt;
  return std::vector<double>(values, values + count);
}

std::map<int, int> read_short_geokeys(TIFF* tif) {
  std::map<int, int> keys;
  uint16_t count = 0;
  uint16_t* dir = nullptr;
  if (TIFFGetField(tif, kGeoKeyDirectory, &count, &dir) != 1 || dir == nullptr || count < 4) {
    return keys;
  }
  const int nkeys = dir[3];
  for (int k = 0; k < nkeys && 4 + 4 * k + 3 < count; ++k) {
    const uint16_t* entry = dir + 4 + 4 * k;
    // Location 0: value stored inline as a SHORT.
    if (entry[1] == 0) keys[entry[0]] = entry[3];
  }
  return keys;
}

double linear_unit_to_meters(int code) {
  switch (code) {
    case 9001: return 1.0;            // metre
    case 9002: return 0.3048;         // international foot
    case 9003: return 1200.0 / 3937;  // US survey foot
    default: return 0.0;
  }
}

class TiffSource final : public PixelSource {
 public:
  TiffSource(TiffPtr tif, int width, int height)
      : tif_(std::move(tif)), width_(width), height_(height) {
    tiled_ = TIFFIsTiled(tif_.get());
    if (tiled_) {
      uint32_t tw = 0, th = 0;
      TIFFGetField(tif_.get(), TIFFTAG_TILEWIDTH, &tw);
      TIFFGetField(tif_.get(), TIFFTAG_TILELENGTH, &th);
      block_w_ = static_cast<int>(tw);
      block_h_ = static_cast<int>(th);
    } else {
      uint32_t rps = 0;
      TIFFGetFieldDefaulted(tif_.get(), TIFFTAG_ROWSPERSTRIP, &rps);
      block_w_ = width_;
      block_h_ = static_cast<int>(std::min<uint32_t>(rps, static_cast<uint32_t>(height_)));
    }
    if (block_w_ <= 0 || block_h_ <= 0) throw InputError("GeoTIFF has invalid block layout");
  }

  void read(int x0, int y0, int w, int h, std::uint8_t* dst,
            std::size_t dst_stride) const override {
    // libtiff handles are not thread-safe.
    std::lock_guard lock(mutex_);
    const tmsize_t block_bytes = tiled_ ? TIFFTileSize(tif_.get()) : TIFFStripSize(tif_.get());
    std::vector<std::uint8_t> block(static_cast<std::size_t>(block_bytes));
    for (int by = y0 / block_h_; by * block_h_ < y0 + h; ++by) {
      for (int bx = x0 / block_w_; bx * block_w_ < x0 + w; ++bx) {
        tmsize_t got;
        if (tiled_) {
          const ttile_t id = TIFFComputeTile(tif_.get(), bx * block_w_, by * block_h_, 0, 0);
          got = TIFFReadEncodedTile(tif_.get(), id, block.data(), block_bytes);
        } else {
          got = TIFFReadEncodedStrip(tif_.get(), static_cast<tstrip_t>(by), block.data(), block_bytes);
        }
        if (got < 0) throw InputError("failed to decode GeoTIFF block");
        const int gx0 = std::max(x0, bx * block_w_);
        const int gx1 = std::min({x0 + w, (bx + 1) * block_w_, width_});
        const int gy0 = std::max(y0, by * block_h_);
        const int gy1 = std::min({y0 + h, (by + 1) * block_h_, height_});
        for (int y = gy0; y < gy1; ++y) {
          const std::uint8_t* src =
              block.data() + (static_cast<std::size_t>(y - by * block_h_) * block_w_ + (gx0 - bx * block_w_)) * 3;
          std::memcpy(dst + static_cast<std::size_t>(y - y0) * dst_stride +
                          static_cast<std::size_t>(gx0 - x0) * 3,
                      src, static_cast<std::size_t>(gx1 - gx0) * 3);
        }
      }
    }
  }

 private:
  TiffPtr tif_;
  int width_;
  int height_;
  bool tiled_ = false;
  int block_w_ = 0;
  int block_h_ = 0;
  mutable std::mutex mutex_;
};

}  // namespace

void register_geotiff_tags() {
  static std::once_flag once;
  std::call_once(once, [] {
    g_parent_extender = TIFFSetTagExtender(geotiff_extender);
    TIFFSetWarningHandler(silence_libtiff);
  });
}

GeoRaster open_geotiff(const std::filesystem::path& path, const RasterOptions& opts) {
  register_geotiff_tags();
  TiffPtr tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw InputError("cannot open GeoTIFF " + path.string());

  uint32_t width = 0, height = 0;
  uint16_t spp = 0, bps = 0, planar = PLANARCONFIG_CONTIG, photometric = 0;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bps);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
  TIFFGetField(tif.get(), TIFFTAG_PHOTOMETRIC, &photometric);
  if (spp != 3 || bps != 8 || planar != PLANARCONFIG_CONTIG || photometric != PHOTOMETRIC_RGB) {
    throw InputError("unsupported band layout in " + path.string() +
                     ": only 3-band interleaved RGB8 is supported");
  }

  const auto keys = read_short_geokeys(tif.get());
  const bool pixel_is_point =
      keys.count(kGTRasterTypeGeoKey) && keys.at(kGTRasterTypeGeoKey) == kRasterPixelIsPoint;

  double a, b, c, d, e, f;
  if (auto m = get_doubles(tif.get(), kModelTransformation); m && m->size() >= 16) {
    a = (*m)[0], b = (*m)[1], c = (*m)[3];
    d = (*m)[4], e = (*m)[5], f = (*m)[7];
  } else {
    auto scale = get_doubles(tif.get(), kModelPixelScale);
    auto tie = get_doubles(tif.get(), kModelTiepoint);
    if (!scale || scale->size() < 2 || !tie || tie->size() < 6) {
      throw InputError("GeoTIFF " + path.string() + " has no georeferencing");
    }
    a = (*scale)[0], b = 0.0, d = 0.0, e = -(*scale)[1];
    c = (*tie)[3] - (*tie)[0] * a;
    f = (*tie)[4] - (*tie)[1] * e;
  }
  if (pixel_is_point) {
    // Tie points refer to pixel centers; move the origin to the corner.
    c -= 0.5 * (a + b);
    f -= 0.5 * (d + e);
  }

  double resolution = 0.0;
  if (opts.resolution_m) {
    resolution = *opts.resolution_m;
  } else {
    if (keys.count(kGTModelTypeGeoKey) && keys.at(kGTModelTypeGeoKey) == kModelTypeGeographic) {
      throw InputError("GeoTIFF " + path.string() +
                       " uses a geographic CRS; pass an explicit resolution in meters");
    }
    double unit = 1.0;
    if (keys.count(kProjLinearUnitsGeoKey)) {
      unit = linear_unit_to_meters(keys.at(kProjLinearUnitsGeoKey));
      if (unit == 0.0) {
        throw InputError("GeoTIFF " + path.string() +
                         " has unsupported linear units; pass an explicit resolution");
      }
    }
    resolution = std::sqrt(std::abs(a * e - b * d)) * unit;
  }

  const geo::AffineTransform transform(a, b, c, d, e, f, resolution);
  auto source = std::make_shared<TiffSource>(std::move(tif), static_cast<int>(width),
                                             static_cast<int>(height));
  return GeoRaster(static_cast<int>(width), static_cast<int>(height), transform,
                   std::move(source));
}

}  // namespace fmars::ingest

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

#include "fmars/ingest/raster.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "fmars/core/error.hpp"
#include "json.hpp"

namespace fmars::ingest {
namespace {

using nlohmann::json;

constexpr const char* kFixtureFormat = "fmars-fixture-raster";

class FileDescriptor {
 public:
  explicit FileDescriptor(const std::filesystem::path& path)
      : fd_(::open(path.c_str(), O_RDONLY | O_CLOEXEC)) {
    if (fd_ < 0) {
      throw InputError("cannot open " + path.string() + ": " + std::strerror(errno));
    }
  }
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;

  int get() const { return fd_; }

 private:
  int fd_;
};

// Raw interleaved RGB8 file; pread keeps concurrent reads independent.
class RawFileSource final : public PixelSource {
 public:
  RawFileSource(const std::filesystem::path& path, int width, int height)
      : fd_(path), width_(width) {
    const auto expected = static_cast<std::uintmax_t>(width) * height * 3;
    if (std::filesystem::file_size(path) != expected) {
      throw InputError("fixture data " + path.string() + " has wrong size, expected " +
                       std::to_string(expected) + " bytes");
    }
  }

  void read(int x0, int y0, int w, int h, std::uint8_t* dst,
            std::size_t dst_stride) const override {
    const std::size_t row_bytes = static_cast<std::size_t>(w) * 3;
    for (int r = 0; r < h; ++r) {
      const off_t offset =
          (static_cast<off_t>(y0 + r) * width_ + x0) * 3;
      std::uint8_t* out = dst + static_cast<std::size_t>(r) * dst_stride;
      std::size_t done = 0;
      while (done < row_bytes) {
        const ssize_t n = ::pread(fd_.get(), out + done, row_bytes - done,
                                  offset + static_cast<off_t>(done));
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) throw InputError("short read from fixture raster");
        done += static_cast<std::size_t>(n);
      }
    }
  }

 private:
  FileDescriptor fd_;
  int width_;
};

class MemorySource final : public PixelSource {
 public:
  explicit MemorySource(geo::RgbImage image) : image_(std::move(image)) {}

  void read(int x0, int y0, int w, int h, std::uint8_t* dst,
            std::size_t dst_stride) const override {
    for (int r = 0; r < h; ++r) {
      std::memcpy(dst + static_cast<std::size_t>(r) * dst_stride,
                  image_.pixel(x0, y0 + r), static_cast<std::size_t>(w) * 3);
    }
  }

 private:
  geo::RgbImage image_;
};

GeoRaster open_fixture(const std::filesystem::path& path, const RasterOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open raster header " + path.string());
  json header;
  try {
    in >> header;
  } catch (const json::exception& e) {
    throw InputError("malformed raster header " + path.string() + ": " + e.what());
  }
  try {
    if (header.value("format", "") != kFixtureFormat) {
      throw InputError(path.string() + " is not a fixture raster header");
    }
    if (header.value("bands", 3) != 3) {
      throw InputError("unsupported band layout: only 3-band RGB8 rasters are supported");
    }
    if (!header.contains("transform") || !header.contains("resolution_m")) {
      throw InputError("raster " + path.string() + " has no georeferencing");
    }
    const auto t = header.at("transform").get<std::vector<double>>();
    if (t.size() != 6) throw InputError("raster transform must have 6 coefficients");
    const double res = opts.resolution_m.value_or(header.at("resolution_m").get<double>());
    const int width = header.at("width").get<int>();
    const int height = header.at("height").get<int>();
    if (width <= 0 || height <= 0) throw InputError("raster dimensions must be positive");
    const auto data_path = path.parent_path() / header.at("data").get<std::string>();
    return GeoRaster(width, height, geo::AffineTransform(t[0], t[1], t[2], t[3], t[4], t[5], res),
                     std::make_shared<RawFileSource>(data_path, width, height));
  } catch (const json::exception& e) {
    throw InputError("malformed raster header " + path.string() + ": " + e.what());
  }
}

}  // namespace

GeoRaster::GeoRaster(int width, int height, geo::AffineTransform transform,
                     std::shared_ptr<const PixelSource> source)
    : width_(width), height_(height), transform_(transform), source_(std::move(source)) {
  if (width_ <= 0 || height_ <= 0) throw InputError("raster dimensions must be positive");
}

geo::Bounds GeoRaster::world_extent() const {
  const std::vector<geo::Point> corners{
      geo::pixel_to_world(transform_, {0, 0}),
      geo::pixel_to_world(transform_, {static_cast<double>(width_), 0}),
      geo::pixel_to_world(transform_, {static_cast<double>(width_), static_cast<double>(height_)}),
      geo::pixel_to_world(transform_, {0, static_cast<double>(height_)})};
  return geo::ring_bounds(corners);
}

Window GeoRaster::read_window(int x0, int y0, int w, int h) const {
  if (w <= 0 || h <= 0) throw InputError("window dimensions must be positive");
  Window out{geo::RgbImage(w, h), false};
  const int cx0 = std::max(x0, 0);
  const int cy0 = std::max(y0, 0);
  const int cx1 = std::min(x0 + w, width_);
  const int cy1 = std::min(y0 + h, height_);
  out.out_of_bounds = cx0 != x0 || cy0 != y0 || cx1 != x0 + w || cy1 != y0 + h;
  if (cx1 <= cx0 || cy1 <= cy0) return out;
  source_->read(cx0, cy0, cx1 - cx0, cy1 - cy0, out.pixels.pixel(cx0 - x0, cy0 - y0),
                static_cast<std::size_t>(w) * 3);
  return out;
}

GeoRaster make_memory_raster(geo::RgbImage image, geo::AffineTransform transform) {
  const int w = image.width;
  const int h = image.height;
  return GeoRaster(w, h, transform, std::make_shared<MemorySource>(std::move(image)));
}

GeoRaster open_raster(const std::filesystem::path& path, const RasterOptions& opts) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (!std::filesystem::exists(path)) throw InputError("raster not found: " + path.string());
  if (ext == ".tif" || ext == ".tiff") return open_geotiff(path, opts);
  if (ext == ".json") return open_fixture(path, opts);
  throw InputError("unsupported raster format: " + path.string());
}

void write_fixture_raster(const std::filesystem::path& header_path, int width,
                          int height, const geo::AffineTransform& transform,
                          const RowGenerator& generator) {
  if (width <= 0 || height <= 0) throw InputError("raster dimensions must be positive");
  auto data_name = header_path.stem().string() + ".rgb";
  const auto data_path = header_path.parent_path() / data_name;
  {
    std::ofstream data(data_path, std::ios::binary);
    if (!data) throw InputError("cannot write " + data_path.string());
    std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 3);
    for (int r = 0; r < height; ++r) {
      std::fill(row.begin(), row.end(), std::uint8_t{0});
      generator(r, row);
      data.write(reinterpret_cast<const char*>(row.data()),
                 static_cast<std::streamsize>(row.size()));
    }
    if (!data) throw InputError("failed writing " + data_path.string());
  }
  json header{{"format", kFixtureFormat},
              {"version", 1},
              {"width", width},
              {"height", height},
              {"bands", 3},
              {"transform",
               {transform.a(), transform.b(), transform.c(), transform.d(), transform.e(),
                transform.f()}},
              {"resolution_m", transform.resolution_m()},
              {"data", data_name}};
  std::ofstream out(header_path);
  if (!out) throw InputError("cannot write " + header_path.string());
  out << header.dump(2) << "\n";
}

}  // namespace fmars::ingest

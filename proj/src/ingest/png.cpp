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


#include "fmars/ingest/png.hpp"

#include <png.h>

#include <cstring>
#include <string>

#include "fmars/core/error.hpp"

namespace fmars::ingest {
namespace {

// RAII wrapper over the libpng simplified API.
class PngImage {
 public:
  PngImage() {
    std::memset(&image_, 0, sizeof image_);
    image_.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image_); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  png_image* get() { return &image_; }
  png_image& operator*() { return image_; }
  png_image* operator->() { return &image_; }

  std::string message() const { return image_.message; }

 private:
  png_image image_;
};

}  // namespace

std::vector<std::uint8_t> encode_png_rgb(const geo::RgbImage& image) {
  if (image.width <= 0 || image.height <= 0) throw InputError("cannot encode empty image");
  PngImage png;
  png->width = static_cast<png_uint_32>(image.width);
  png->height = static_cast<png_uint_32>(image.height);
  png->format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(png.get(), nullptr, &size, 0, image.data.data(), 0, nullptr)) {
    throw InputError("png encode failed: " + png.message());
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(png.get(), out.data(), &size, 0, image.data.data(), 0,
                                 nullptr)) {
    throw InputError("png encode failed: " + png.message());
  }
  out.resize(size);
  return out;
}

geo::RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes) {
  PngImage png;
  if (!png_image_begin_read_from_memory(png.get(), bytes.data(), bytes.size())) {
    throw InputError("png decode failed: " + png.message());
  }
  png->format = PNG_FORMAT_RGB;
  geo::RgbImage out(static_cast<int>(png->width), static_cast<int>(png->height));
  if (!png_image_finish_read(png.get(), nullptr, out.data.data(), 0, nullptr)) {
    throw InputError("png decode failed: " + png.message());
  }
  return out;
}

void write_png_gray(const std::filesystem::path& path, const geo::Grid8& image) {
  if (image.width <= 0 || image.height <= 0) throw InputError("cannot write empty image");
  PngImage png;
  png->width = static_cast<png_uint_32>(image.width);
  png->height = static_cast<png_uint_32>(image.height);
  png->format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(png.get(), path.c_str(), 0, image.data.data(), 0, nullptr)) {
    throw InputError("cannot write " + path.string() + ": " + png.message());
  }
}

geo::Grid8 read_png_gray(const std::filesystem::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_file(png.get(), path.c_str())) {
    throw InputError("cannot read " + path.string() + ": " + png.message());
  }
  png->format = PNG_FORMAT_GRAY;
  geo::Grid8 out(static_cast<int>(png->width), static_cast<int>(png->height));
  if (!png_image_finish_read(png.get(), nullptr, out.data.data(), 0, nullptr)) {
    throw InputError("cannot read " + path.string() + ": " + png.message());
  }
  return out;
}

}  // namespace fmars::ingest

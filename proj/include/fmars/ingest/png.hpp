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


// PNG encode/decode for tiles sent to backends and 8-bit label images.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fmars/geo/image.hpp"

namespace fmars::ingest {

std::vector<std::uint8_t> encode_png_rgb(const geo::RgbImage& image);
/// Throws InputError on malformed data. Gray and RGBA inputs are converted.
geo::RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes);

void write_png_gray(const std::filesystem::path& path, const geo::Grid8& image);
/// Reads an 8-bit single-channel PNG; other layouts are converted to gray.
geo::Grid8 read_png_gray(const std::filesystem::path& path);

}  // namespace fmars::ingest

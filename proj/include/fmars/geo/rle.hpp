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
#include <vector>

#include "fmars/geo/image.hpp"

namespace fmars::geo {

/// Uncompressed run-length mask, row-major scan, runs alternate 0,1,0,...
/// starting with a (possibly empty) run of zeros. This is the bit-exact
/// convention of the segmenter wire protocol.
struct MaskRLE {
  int height = 0;
  int width = 0;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const MaskRLE&, const MaskRLE&) = default;
};

MaskRLE rle_encode(const BinaryMask& mask);

/// Throws InputError if dimensions are not positive or the runs do not sum
/// to height * width.
BinaryMask rle_decode(const MaskRLE& rle);

/// Foreground pixel count without decoding.
std::uint64_t rle_area(const MaskRLE& rle);

}  // namespace fmars::geo

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


#include "fmars/eval/softmax.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "fmars/core/error.hpp"
#include "fmars/eval/confusion.hpp"
#include "fmars/ingest/vector.hpp"
#include "json.hpp"

namespace fmars::eval {
namespace {

constexpr int kPlanes = kClasses - 1;
constexpr const char* kFormat = "fmars-score-map";

static_assert(std::endian::native == std::endian::little, "score maps are little-endian");

}  // namespace

ScoreMap::ScoreMap(int w, int h)
    : width(w), height(h),
      data(static_cast<std::size_t>(kPlanes) * static_cast<std::size_t>(w) *
               static_cast<std::size_t>(h),
           0.0f) {}

float& ScoreMap::at(int plane, int x, int y) {
  return data[(static_cast<std::size_t>(plane) * height + y) * width + x];
}

float ScoreMap::at(int plane, int x, int y) const {
  return data[(static_cast<std::size_t>(plane) * height + y) * width + x];
}

geo::LabelRaster threshold_softmax(const ScoreMap& scores, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InputError("tau must lie in [0, 1]");
  if (scores.data.size() !=
      static_cast<std::size_t>(kPlanes) * scores.width * static_cast<std::size_t>(scores.height)) {
    throw InputError("score map size does not match its dimensions");
  }
  geo::LabelRaster out(scores.width, scores.height);
  for (int y = 0; y < scores.height; ++y) {
    for (int x = 0; x < scores.width; ++x) {
      double sum = 0.0;
      int best = 0;
      float best_score = -1.0f;
      for (int c = 0; c < kPlanes; ++c) {
        const float s = scores.at(c, x, y);
        if (!(s >= 0.0f && s <= 1.0f)) {
          throw InputError("score outside [0, 1] at pixel (" + std::to_string(x) + ", " +
                           std::to_string(y) + ")");
        }
        sum += s;
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      if (sum > 1.0 + 1e-6) {
        throw InputError("scores sum above 1 at pixel (" + std::to_string(x) + ", " +
                         std::to_string(y) + ")");
      }
      out.at(x, y) = best_score >= tau ? static_cast<std::uint8_t>(best + 1) : 0;
    }
  }
  return out;
}

void write_score_map(const std::filesystem::path& header_path, const ScoreMap& scores) {
  const std::string data_name = header_path.stem().string() + ".f32";
  {
    std::ofstream data(header_path.parent_path() / data_name, std::ios::binary);
    if (!data) throw InputError("cannot write score data for " + header_path.string());
    data.write(reinterpret_cast<const char*>(scores.data.data()),
               static_cast<std::streamsize>(scores.data.size() * sizeof(float)));
    if (!data) throw InputError("failed writing score data for " + header_path.string());
  }
  const nlohmann::json header{{"format", kFormat},
                              {"version", 1},
                              {"width", scores.width},
                              {"height", scores.height},
                              {"classes", {"roads", "high_vegetation", "buildings"}},
                              {"data", data_name}};
  std::ofstream out(header_path);
  if (!out) throw InputError("cannot write " + header_path.string());
  out << header.dump(2) << '\n';
}

ScoreMap read_score_map(const std::filesystem::path& header_path) {
  const nlohmann::json header = ingest::read_json_file(header_path);
  try {
    if (header.value("format", "") != kFormat) {
      throw InputError(header_path.string() + " is not a score map header");
    }
    const auto classes = header.at("classes").get<std::vector<std::string>>();
    if (classes.size() != kPlanes) throw InputError("score map must have 3 class planes");
    for (int c = 0; c < kPlanes; ++c) {
      if (annotate::parse_class(classes[c]) != static_cast<annotate::ClassLabel>(c + 1)) {
        throw InputError("score map planes must be ordered roads, high_vegetation, buildings");
      }
    }
    ScoreMap scores(header.at("width").get<int>(), header.at("height").get<int>());
    if (scores.width <= 0 || scores.height <= 0) throw InputError("score map dimensions must be positive");
    const auto data_path = header_path.parent_path() / header.at("data").get<std::string>();
    const std::size_t bytes = scores.data.size() * sizeof(float);
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw InputError("cannot open score data " + data_path.string());
    if (std::filesystem::file_size(data_path) != bytes) {
      throw InputError("score data " + data_path.string() + " has wrong size");
    }
    in.read(reinterpret_cast<char*>(scores.data.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw InputError("short read from " + data_path.string());
    return scores;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed score map header " + header_path.string() + ": " + e.what());
  }
}

}  // namespace fmars::eval

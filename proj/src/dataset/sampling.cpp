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


#include "fmars/dataset/sampling.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "fmars/core/error.hpp"

namespace fmars::dataset {
namespace {

double weight(const TileRecord& t) {
  return t.split == Split::kTrain && t.entropy_bits > 0.0 ? t.entropy_bits : 0.0;
}

// 53 random bits mapped to [0, 1).
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> sampling_probabilities(std::span<const TileRecord> tiles) {
  double total = 0.0;
  for (const TileRecord& t : tiles) total += weight(t);
  if (!(total > 0.0)) throw InputError("no train tile has positive label entropy");
  std::vector<double> p;
  p.reserve(tiles.size());
  for (const TileRecord& t : tiles) p.push_back(weight(t) / total);
  return p;
}

std::vector<std::size_t> sample_tiles(std::span<const TileRecord> tiles, std::size_t n,
                                      std::uint64_t seed) {
  std::vector<std::size_t> index;
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const double w = weight(tiles[i]);
    if (w <= 0.0) continue;
    total += w;
    index.push_back(i);
    cumulative.push_back(total);
  }
  if (index.empty()) throw InputError("no train tile has positive label entropy");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = unit_interval(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    out.push_back(index[static_cast<std::size_t>(it - cumulative.begin())]);
  }
  return out;
}

std::vector<ImageKey> select_test_images(std::vector<TileRecord>& tiles, ImageScore score) {
  struct Acc {
    std::vector<double> entropies;
    ClassHistogram hist{};
  };
  std::map<std::string, std::map<std::string, Acc>> events;
  for (const TileRecord& t : tiles) {
    Acc& a = events[t.event_id][t.image_id];
    a.entropies.push_back(t.entropy_bits);
    for (std::size_t c = 0; c < a.hist.size(); ++c) a.hist[c] += t.histogram[c];
  }
  std::vector<ImageKey> test;
  for (auto& [event, images] : events) {
    const std::string* best = nullptr;
    double best_score = 0.0;
    for (auto& [image, a] : images) {
      double s = 0.0;
      if (score == ImageScore::kMeanTileEntropy) {
        // Summed in sorted order.
        std::sort(a.entropies.begin(), a.entropies.end());
        for (double e : a.entropies) s += e;
        s /= static_cast<double>(a.entropies.size());
      } else {
        std::uint64_t total = 0;
        for (auto c : a.hist) total += c;
        s = total > 0 ? label_entropy(a.hist) : 0.0;
      }
      if (best == nullptr || s > best_score) {
        best = &image;
        best_score = s;
      }
    }
    test.emplace_back(event, *best);
  }
  for (TileRecord& t : tiles) {
    t.split = std::binary_search(test.begin(), test.end(), ImageKey{t.event_id, t.image_id})
                  ? Split::kTest
                  : Split::kTrain;
  }
  return test;
}

}  // namespace fmars::dataset

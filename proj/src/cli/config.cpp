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


#include "fmars/cli/config.hpp"

#include <set>

#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Reader {
 public:
  Reader(const json& obj, std::string where, std::set<std::string> allowed)
      : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw InputError(label("") + " must be an object");
    for (const auto& [key, _] : obj_.items()) {
      if (!allowed.count(key)) throw InputError("unknown config key '" + label(key) + "'");
    }
  }

  template <typename T>
  void get(const char* key, T& out) const {
    if (!obj_.contains(key)) return;
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      throw InputError("config key '" + label(key) + "' has the wrong type");
    }
  }

  void path(const char* key, OptPath& out, const fs::path& base) const {
    if (!obj_.contains(key)) return;
    if (obj_.at(key).is_null()) {
      out.reset();
      return;
    }
    std::string s;
    get(key, s);
    fs::path p(s);
    out = p.is_absolute() ? p : base / p;
  }

  const json* section(const char* key) const {
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }

  std::string label(const std::string& key) const {
    if (where_.empty()) return key.empty() ? "config" : key;
    return key.empty() ? where_ : where_ + "." + key;
  }

 private:
  const json& obj_;
  std::string where_;
};

std::string score_name(dataset::ImageScore s) {
  return s == dataset::ImageScore::kImageEntropy ? "image_entropy" : "mean_tile_entropy";
}

dataset::ImageScore parse_score(const std::string& s) {
  if (s == "mean_tile_entropy") return dataset::ImageScore::kMeanTileEntropy;
  if (s == "image_entropy") return dataset::ImageScore::kImageEntropy;
  throw InputError("dataset.test_image_score must be mean_tile_entropy or image_entropy");
}

json path_json(const OptPath& p) { return p ? json(p->string()) : json(nullptr); }

}  // namespace

void PipelineConfig::validate() const {
  annotate.validate();
  if (backend.kind == BackendKind::kRemote) {
    if (backend.timeout_ms <= 0) throw InputError("backend.timeout_ms must be positive");
    if (backend.max_in_flight <= 0) throw InputError("backend.max_in_flight must be positive");
    if (backend.attempts <= 0) throw InputError("backend.attempts must be positive");
    if (backend.initial_backoff_ms < 0) throw InputError("backend.initial_backoff_ms must be >= 0");
  }
  if (dataset.tile_size <= 0) throw InputError("dataset.tile_size must be positive");
  if (!(confidence_tau >= 0.0 && confidence_tau <= 1.0)) {
    throw InputError("eval.confidence_tau must lie in [0, 1]");
  }
  if (resolution_m && !(*resolution_m > 0.0)) throw InputError("resolution_m must be positive");
}

bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
  return to_json(a) == to_json(b);
}

PipelineConfig parse_config(const json& j, const fs::path& base_dir) {
  PipelineConfig cfg;
  annotate::AnnotateConfig& ac = cfg.annotate;
  const Reader root(j, "",
                    {"paths", "classes", "filter", "roads", "prompts", "segmenter", "polygonize",
                     "merge", "tiling", "backend", "dataset", "eval", "resolution_m", "workers",
                     "seed"});
  if (const json* s = root.section("paths")) {
    const Reader r(*s, "paths",
                   {"raster", "footprints", "roads", "output", "detector_fixture", "checkpoint"});
    r.path("raster", cfg.paths.raster, base_dir);
    r.path("footprints", cfg.paths.footprints, base_dir);
    r.path("roads", cfg.paths.roads, base_dir);
    r.path("output", cfg.paths.output, base_dir);
    r.path("detector_fixture", cfg.paths.detector_fixture, base_dir);
    r.path("checkpoint", cfg.paths.checkpoint, base_dir);
  }
  if (root.section("classes")) {
    std::vector<std::string> names;
    root.get("classes", names);
    ac.classes.clear();
    for (const std::string& n : names) ac.classes.push_back(annotate::parse_class(n));
  }
  if (const json* s = root.section("filter")) {
    const Reader r(*s, "filter",
                   {"box_threshold", "text_threshold", "nms_iou", "min_aspect", "max_area_m2"});
    r.get("box_threshold", ac.filter.box_threshold);
    r.get("text_threshold", ac.filter.text_threshold);
    r.get("nms_iou", ac.filter.nms_iou);
    r.get("min_aspect", ac.filter.min_aspect);
    r.get("max_area_m2", ac.filter.max_area_m2);
  }
  if (const json* s = root.section("roads")) {
    Reader(*s, "roads", {"buffer_radius_m"}).get("buffer_radius_m", ac.road_radius_m);
  }
  if (const json* s = root.section("prompts")) {
    Reader(*s, "prompts", {"high_vegetation"}).get("high_vegetation", ac.vegetation_prompts);
  }
  if (const json* s = root.section("segmenter")) {
    const Reader r(*s, "segmenter", {"multimask", "leakage_margin_px"});
    r.get("multimask", ac.multimask);
    r.get("leakage_margin_px", ac.leakage_margin_px);
  }
  if (const json* s = root.section("polygonize")) {
    const Reader r(*s, "polygonize", {"min_area_px", "simplify_tol_px"});
    r.get("min_area_px", ac.polygonize.min_area_px);
    r.get("simplify_tol_px", ac.polygonize.simplify_tol_px);
  }
  if (const json* s = root.section("merge")) {
    Reader(*s, "merge", {"dedupe_iou"}).get("dedupe_iou", ac.dedupe_iou);
  }
  if (const json* s = root.section("tiling")) {
    const Reader r(*s, "tiling", {"size", "overlap"});
    r.get("size", ac.tiling.size);
    r.get("overlap", ac.tiling.overlap);
  }
  if (const json* s = root.section("backend")) {
    const Reader r(*s, "backend",
                   {"kind", "url", "timeout_ms", "max_in_flight", "attempts", "initial_backoff_ms"});
    std::string kind = "mock";
    r.get("kind", kind);
    if (kind == "mock") {
      cfg.backend.kind = BackendKind::kMock;
    } else if (kind == "remote") {
      cfg.backend.kind = BackendKind::kRemote;
    } else {
      throw InputError("backend.kind must be mock or remote");
    }
    r.get("url", cfg.backend.url);
    r.get("timeout_ms", cfg.backend.timeout_ms);
    r.get("max_in_flight", cfg.backend.max_in_flight);
    r.get("attempts", cfg.backend.attempts);
    r.get("initial_backoff_ms", cfg.backend.initial_backoff_ms);
  }
  if (const json* s = root.section("dataset")) {
    const Reader r(*s, "dataset", {"tile_size", "test_image_score"});
    r.get("tile_size", cfg.dataset.tile_size);
    std::string score = score_name(cfg.dataset.test_image_score);
    r.get("test_image_score", score);
    cfg.dataset.test_image_score = parse_score(score);
  }
  if (const json* s = root.section("eval")) {
    Reader(*s, "eval", {"confidence_tau"}).get("confidence_tau", cfg.confidence_tau);
  }
  if (const json* s = root.section("resolution_m"); s && !s->is_null()) {
    double r = 0.0;
    root.get("resolution_m", r);
    cfg.resolution_m = r;
  }
  long long workers = static_cast<long long>(ac.workers);
  root.get("workers", workers);
  if (workers < 0) throw InputError("workers must be >= 0");
  ac.workers = static_cast<std::size_t>(workers);
  root.get("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  return parse_config(ingest::read_json_file(path), path.parent_path());
}

json to_json(const PipelineConfig& cfg) {
  const annotate::AnnotateConfig& ac = cfg.annotate;
  json classes = json::array();
  for (annotate::ClassLabel c : ac.classes) classes.push_back(annotate::class_name(c));
  return {
      {"paths",
       {{"raster", path_json(cfg.paths.raster)},
        {"footprints", path_json(cfg.paths.footprints)},
        {"roads", path_json(cfg.paths.roads)},
        {"output", path_json(cfg.paths.output)},
        {"detector_fixture", path_json(cfg.paths.detector_fixture)},
        {"checkpoint", path_json(cfg.paths.checkpoint)}}},
      {"classes", classes},
      {"filter",
       {{"box_threshold", ac.filter.box_threshold},
        {"text_threshold", ac.filter.text_threshold},
        {"nms_iou", ac.filter.nms_iou},
        {"min_aspect", ac.filter.min_aspect},
        {"max_area_m2", ac.filter.max_area_m2}}},
      {"roads", {{"buffer_radius_m", ac.road_radius_m}}},
      {"prompts", {{"high_vegetation", ac.vegetation_prompts}}},
      {"segmenter", {{"multimask", ac.multimask}, {"leakage_margin_px", ac.leakage_margin_px}}},
      {"polygonize",
       {{"min_area_px", ac.polygonize.min_area_px},
        {"simplify_tol_px", ac.polygonize.simplify_tol_px}}},
      {"merge", {{"dedupe_iou", ac.dedupe_iou}}},
      {"tiling", {{"size", ac.tiling.size}, {"overlap", ac.tiling.overlap}}},
      {"backend",
       {{"kind", cfg.backend.kind == BackendKind::kRemote ? "remote" : "mock"},
        {"url", cfg.backend.url},
        {"timeout_ms", cfg.backend.timeout_ms},
        {"max_in_flight", cfg.backend.max_in_flight},
        {"attempts", cfg.backend.attempts},
        {"initial_backoff_ms", cfg.backend.initial_backoff_ms}}},
      {"dataset",
       {{"tile_size", cfg.dataset.tile_size},
        {"test_image_score", score_name(cfg.dataset.test_image_score)}}},
      {"eval", {{"confidence_tau", cfg.confidence_tau}}},
      {"resolution_m", cfg.resolution_m ? json(*cfg.resolution_m) : json(nullptr)},
      {"workers", ac.workers},
      {"seed", cfg.seed}};
}

}  // namespace fmars::cli

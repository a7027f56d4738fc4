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


#include "fmars/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fmars/annotate/output.hpp"
#include "fmars/backends/mock.hpp"
#include "fmars/backends/remote.hpp"
#include "fmars/cli/config.hpp"
#include "fmars/cli/scenario.hpp"
#include "fmars/core/error.hpp"
#include "fmars/core/log.hpp"
#include "fmars/dataset/manifest.hpp"
#include "fmars/dataset/sampling.hpp"
#include "fmars/dataset/stats.hpp"
#include "fmars/dataset/tiles.hpp"
#include "fmars/eval/run.hpp"
#include "fmars/ingest/png.hpp"
#include "fmars/ingest/raster.hpp"

namespace fmars::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename T>
using Opt = std::optional<T>;

struct Flags {
  Opt<std::string> config;
  bool print_config = false;
  Opt<std::string> log_level;
  Opt<std::size_t> workers;

  // annotate
  Opt<std::string> raster, footprints, roads, output, detector_fixture, checkpoint;
  Opt<std::string> backend, backend_url;
  std::vector<std::string> prompts, classes;
  Opt<double> box_threshold, text_threshold, nms_iou, min_aspect, max_area_m2, road_radius_m;
  Opt<int> tile_size, tile_overlap;
  Opt<double> resolution_m;
  bool resume = false;

  // dataset
  Opt<std::string> annotations, event, image, out_dir, manifest, out, score;
  Opt<int> dataset_tile_size;
  bool append = false, write_labels = false, write_images = false;
  Opt<std::size_t> n;
  Opt<std::uint64_t> seed;
  std::vector<std::string> event_annotations;
  Opt<std::string> json_out;

  // eval
  Opt<std::string> gt, pred, method;
  Opt<double> tau;
};

log::Level parse_level(const std::string& s) {
  if (s == "debug") return log::Level::kDebug;
  if (s == "info") return log::Level::kInfo;
  if (s == "warn") return log::Level::kWarn;
  if (s == "error") return log::Level::kError;
  if (s == "off") return log::Level::kOff;
  throw InputError("log level must be debug, info, warn, error or off");
}

template <typename T, typename U>
void override(const Opt<T>& flag, U& field) {
  if (flag) field = *flag;
}

void override_path(const Opt<std::string>& flag, OptPath& field) {
  if (flag) field = fs::path(*flag);
}

PipelineConfig resolve_config(const Flags& f) {
  PipelineConfig cfg = f.config ? load_config(*f.config) : PipelineConfig{};
  annotate::AnnotateConfig& ac = cfg.annotate;
  override_path(f.raster, cfg.paths.raster);
  override_path(f.footprints, cfg.paths.footprints);
  override_path(f.roads, cfg.paths.roads);
  override_path(f.output, cfg.paths.output);
  override_path(f.detector_fixture, cfg.paths.detector_fixture);
  override_path(f.checkpoint, cfg.paths.checkpoint);
  if (f.backend) {
    if (*f.backend == "mock") {
      cfg.backend.kind = BackendKind::kMock;
    } else if (*f.backend == "remote") {
      cfg.backend.kind = BackendKind::kRemote;
    } else {
      throw InputError("--backend must be mock or remote");
    }
  }
  override(f.backend_url, cfg.backend.url);
  if (!f.prompts.empty()) ac.vegetation_prompts = f.prompts;
  if (!f.classes.empty()) {
    ac.classes.clear();
    for (const std::string& c : f.classes) ac.classes.push_back(annotate::parse_class(c));
  }
  override(f.box_threshold, ac.filter.box_threshold);
  override(f.text_threshold, ac.filter.text_threshold);
  override(f.nms_iou, ac.filter.nms_iou);
  override(f.min_aspect, ac.filter.min_aspect);
  override(f.max_area_m2, ac.filter.max_area_m2);
  override(f.road_radius_m, ac.road_radius_m);
  override(f.tile_size, ac.tiling.size);
  override(f.tile_overlap, ac.tiling.overlap);
  override(f.workers, ac.workers);
  if (f.resolution_m) cfg.resolution_m = *f.resolution_m;
  override(f.dataset_tile_size, cfg.dataset.tile_size);
  if (f.score) {
    cfg.dataset.test_image_score = parse_config(json{{"dataset", {{"test_image_score", *f.score}}}}, ".")
                                       .dataset.test_image_score;
  }
  override(f.seed, cfg.seed);
  override(f.tau, cfg.confidence_tau);
  if (cfg.backend.kind == BackendKind::kRemote && cfg.backend.url.empty()) {
    if (const char* env = std::getenv("FMARS_BACKEND_URL"); env && *env) cfg.backend.url = env;
  }
  cfg.validate();
  return cfg;
}

const fs::path& require(const OptPath& p, const char* what) {
  if (!p) throw InputError(std::string("missing required path: ") + what);
  return *p;
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::is_regular_file(p)) throw InputError(std::string(what) + " not found: " + p.string());
}

void require_parent_dir(const fs::path& p) {
  const fs::path parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
  if (!fs::is_directory(parent)) {
    throw InputError("output directory does not exist: " + parent.string());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
  if (!f) throw InputError("failed writing " + path.string());
}

int cmd_annotate(const PipelineConfig& cfg, bool resume, std::ostream& out) {
  const fs::path& raster_path = require(cfg.paths.raster, "raster (--raster)");
  const fs::path& output = require(cfg.paths.output, "output (--output)");
  require_file(raster_path, "raster");
  if (cfg.paths.footprints) require_file(*cfg.paths.footprints, "footprints");
  if (cfg.paths.roads) require_file(*cfg.paths.roads, "roads");
  if (cfg.paths.detector_fixture) require_file(*cfg.paths.detector_fixture, "detector fixture");
  require_parent_dir(output);
  const fs::path checkpoint =
      cfg.paths.checkpoint.value_or(fs::path(output.string() + ".checkpoint.json"));
  if (resume && !fs::exists(checkpoint)) {
    throw InputError("--resume given but no checkpoint at " + checkpoint.string());
  }

  const auto started = std::chrono::steady_clock::now();
  const ingest::GeoRaster raster =
      ingest::open_raster(raster_path, ingest::RasterOptions{cfg.resolution_m});
  const geo::Bounds extent = raster.world_extent();
  std::optional<ingest::FootprintSet> footprints;
  std::optional<ingest::RoadGraph> roads;
  if (cfg.paths.footprints) footprints = ingest::load_footprints(*cfg.paths.footprints, extent);
  if (cfg.paths.roads) roads = ingest::load_roads(*cfg.paths.roads, extent);

  std::unique_ptr<backends::Detector> mock_detector;
  std::unique_ptr<backends::Segmenter> mock_segmenter;
  std::unique_ptr<backends::RemoteBackend> remote;
  annotate::BackendSet set;
  if (cfg.backend.kind == BackendKind::kMock) {
    backends::DetectorFixture fixture;
    if (cfg.paths.detector_fixture) {
      fixture = backends::load_detector_fixture(*cfg.paths.detector_fixture);
    }
    mock_detector = std::make_unique<backends::MockDetector>(std::move(fixture));
    mock_segmenter = std::make_unique<backends::MockSegmenter>();
    set = {mock_detector.get(), mock_segmenter.get()};
  } else {
    if (cfg.backend.url.empty()) {
      throw InputError("remote backend needs --backend-url or FMARS_BACKEND_URL");
    }
    remote = std::make_unique<backends::RemoteBackend>(backends::RemoteOptions{
        cfg.backend.url, std::chrono::milliseconds(cfg.backend.timeout_ms),
        cfg.backend.max_in_flight, cfg.backend.attempts,
        std::chrono::milliseconds(cfg.backend.initial_backoff_ms)});
    const auto health = remote->health();
    log::info("backend healthy", {{"url", cfg.backend.url}, {"status", health.status}});
    set = {remote.get(), remote.get()};
  }

  const annotate::Sources sources{footprints ? &*footprints : nullptr, roads ? &*roads : nullptr};
  std::vector<annotate::InstanceAnnotation> instances;
  try {
    instances = annotate::run_annotation(raster, sources, set, cfg.annotate, {checkpoint, resume});
  } catch (const BackendError& e) {
    if (fs::exists(checkpoint)) {
      log::error("annotation stopped; finished tiles are checkpointed",
                 {{"checkpoint", checkpoint.string()}, {"resume_with", "--resume"}});
    }
    throw;
  }
  std::array<std::size_t, annotate::kNumClasses> counts{};
  for (const auto& inst : instances) ++counts[static_cast<std::size_t>(inst.label)];
  annotate::merge_and_write(std::move(instances), output);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json summary{{"output", output.string()}, {"seconds", seconds}};
  for (int c = 1; c < annotate::kNumClasses; ++c) {
    summary["instances"][std::string(annotate::class_name(static_cast<annotate::ClassLabel>(c)))] =
        counts[c];
  }
  log::info("annotation written", summary);
  out << json{{"output", output.string()}, {"instances", summary["instances"]}}.dump() << '\n';
  return kExitOk;
}

std::string tile_id(const dataset::TileRecord& r) {
  return fmt::format("{}_{}_r{:03}_c{:03}", r.event_id, r.image_id, r.row, r.col);
}

int cmd_tile(const PipelineConfig& cfg, const Flags& f, std::ostream& out) {
  const fs::path& raster_path = require(cfg.paths.raster, "raster (--raster)");
  if (!f.annotations) throw InputError("missing required path: annotations (--annotations)");
  if (!f.event) throw InputError("missing --event");
  if (!f.out_dir) throw InputError("missing --out-dir");
  require_file(raster_path, "raster");
  require_file(*f.annotations, "annotations");
  const fs::path out_dir(*f.out_dir);
  fs::create_directories(out_dir);
  const fs::path manifest = f.manifest ? fs::path(*f.manifest) : out_dir / "manifest.jsonl";

  const ingest::GeoRaster raster =
      ingest::open_raster(raster_path, ingest::RasterOptions{cfg.resolution_m});
  const auto instances = annotate::load_annotations(*f.annotations);
  const dataset::RenderedLabelSource labels(instances, raster.transform(), raster.width(),
                                            raster.height());
  const dataset::ImageRef image{*f.event, f.image.value_or(raster_path.stem().string()),
                                raster.width(), raster.height(), raster.resolution_m()};
  if (f.write_labels) fs::create_directories(out_dir / "labels");
  if (f.write_images) fs::create_directories(out_dir / "images");
  dataset::TileOptions opts;
  opts.size = cfg.dataset.tile_size;
  opts.workers = cfg.annotate.workers;
  opts.on_tile = [&](const dataset::TileRecord& r, const geo::LabelRaster& lab) {
    const std::string id = tile_id(r);
    if (f.write_labels) ingest::write_png_gray(out_dir / "labels" / (id + ".png"), lab);
    if (f.write_images) {
      const auto window = raster.read_window(r.x0, r.y0, r.size, r.size);
      write_text(out_dir / "images" / (id + ".png"), [&] {
        const auto bytes = ingest::encode_png_rgb(window.pixels);
        return std::string(bytes.begin(), bytes.end());
      }());
    }
  };
  std::vector<dataset::TileRecord> tiles = dataset::tile_image(image, labels, opts);

  std::vector<dataset::TileRecord> all;
  if (f.append && fs::exists(manifest)) {
    for (auto& r : dataset::read_manifest(manifest)) {
      if (r.event_id != image.event_id || r.image_id != image.image_id) all.push_back(std::move(r));
    }
  }
  all.insert(all.end(), tiles.begin(), tiles.end());
  dataset::write_manifest(all, manifest);
  log::info("tiled image", {{"event", image.event_id},
                            {"image", image.image_id},
                            {"tiles", tiles.size()},
                            {"manifest", manifest.string()}});
  out << json{{"manifest", manifest.string()}, {"tiles", tiles.size()}}.dump() << '\n';
  return kExitOk;
}

fs::path require_manifest(const Flags& f) {
  if (!f.manifest) throw InputError("missing --manifest");
  require_file(*f.manifest, "manifest");
  return *f.manifest;
}

int cmd_split(const PipelineConfig& cfg, const Flags& f, std::ostream& out) {
  const fs::path manifest = require_manifest(f);
  auto tiles = dataset::read_manifest(manifest);
  const auto test = dataset::select_test_images(tiles, cfg.dataset.test_image_score);
  dataset::write_manifest(tiles, f.out ? fs::path(*f.out) : manifest);
  for (const auto& [event, image] : test) {
    out << json{{"event", event}, {"image", image}, {"split", "test"}}.dump() << '\n';
  }
  return kExitOk;
}

int cmd_sample(const PipelineConfig& cfg, const Flags& f, std::ostream& out) {
  const fs::path manifest = require_manifest(f);
  if (!f.n) throw InputError("missing --n");
  const auto tiles = dataset::read_manifest(manifest);
  const auto draws = dataset::sample_tiles(tiles, *f.n, cfg.seed);
  std::string text;
  for (std::size_t i : draws) text += dataset::to_json(tiles[i]).dump() + '\n';
  if (f.out) {
    write_text(*f.out, text);
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_eval(const PipelineConfig& cfg, const Flags& f, std::ostream& out) {
  if (!f.gt || !f.pred) throw InputError("eval needs --gt and --pred");
  eval::EvalConfig ec;
  ec.confidence_tau = cfg.confidence_tau;
  ec.workers = cfg.annotate.workers;
  ec.method = f.method.value_or("prediction");
  const eval::EvalReport report = eval::eval_run(*f.gt, *f.pred, ec);
  if (f.json_out) write_text(*f.json_out, eval::to_json(report).dump(2) + '\n');
  out << eval::format_table(report);
  return kExitOk;
}

int cmd_stats(const Flags& f, std::ostream& out) {
  const fs::path manifest = require_manifest(f);
  const auto tiles = dataset::read_manifest(manifest);
  std::map<std::string, std::vector<annotate::InstanceAnnotation>> by_event;
  for (const std::string& entry : f.event_annotations) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw InputError("--annotations expects EVENT=PATH, got '" + entry + "'");
    }
    auto inst = annotate::load_annotations(entry.substr(eq + 1));
    auto& dst = by_event[entry.substr(0, eq)];
    dst.insert(dst.end(), std::make_move_iterator(inst.begin()), std::make_move_iterator(inst.end()));
  }
  const auto stats = dataset::dataset_stats(tiles, by_event);
  if (f.json_out) write_text(*f.json_out, dataset::to_json(stats).dump(2) + '\n');
  out << dataset::format_table(stats);
  return kExitOk;
}

int cmd_scenario(const Flags& f, std::ostream& out) {
  if (!f.out_dir) throw InputError("missing --out-dir");
  const fs::path dir(*f.out_dir);
  fs::create_directories(dir);
  write_scenario(make_scenario(), dir);
  out << json{{"config", (dir / "config.json").string()}}.dump() << '\n';
  return kExitOk;
}

void add_annotate_options(CLI::App* sub, Flags& f) {
  sub->add_option("--raster", f.raster, "GeoTIFF or fixture raster header");
  sub->add_option("--footprints", f.footprints, "building footprints (GeoJSON)");
  sub->add_option("--roads", f.roads, "road polylines (GeoJSON)");
  sub->add_option("--output", f.output, "output GeoJSON");
  sub->add_option("--detector-fixture", f.detector_fixture, "mock detector fixture");
  sub->add_option("--checkpoint", f.checkpoint, "checkpoint file");
  sub->add_flag("--resume", f.resume, "resume from the checkpoint");
  sub->add_option("--backend", f.backend, "mock or remote");
  sub->add_option("--backend-url", f.backend_url, "remote backend base URL");
  sub->add_option("--prompt", f.prompts, "vegetation text prompt (repeatable)");
  sub->add_option("--classes", f.classes, "classes to annotate");
  sub->add_option("--box-threshold", f.box_threshold, "minimum detector box score");
  sub->add_option("--text-threshold", f.text_threshold, "minimum detector phrase score");
  sub->add_option("--nms-iou", f.nms_iou, "box IoU at which NMS suppresses");
  sub->add_option("--min-aspect", f.min_aspect, "minimum short/long side ratio");
  sub->add_option("--max-area-m2", f.max_area_m2, "maximum vegetation box area");
  sub->add_option("--road-radius-m", f.road_radius_m, "road buffer radius");
  sub->add_option("--tile-size", f.tile_size, "backend tile size in pixels");
  sub->add_option("--tile-overlap", f.tile_overlap, "backend tile overlap in pixels");
  sub->add_option("--resolution-m", f.resolution_m, "meters per pixel override");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  Flags f;
  CLI::App app{"Automated annotation of buildings, roads and high vegetation"};
  app.name("fmars");
  app.require_subcommand(1);
  app.add_option("--config", f.config, "JSON configuration file");
  app.add_flag("--print-config", f.print_config, "print the resolved configuration and exit");
  app.add_option("--log-level", f.log_level, "debug, info, warn, error or off");
  app.add_option("--workers", f.workers, "worker threads (0: available parallelism)");

  CLI::App* annotate = app.add_subcommand("annotate", "annotate a raster");
  add_annotate_options(annotate, f);

  CLI::App* tile = app.add_subcommand("tile", "cut an annotated image into dataset tiles");
  tile->add_option("--raster", f.raster, "source raster");
  tile->add_option("--annotations", f.annotations, "annotation GeoJSON for the raster");
  tile->add_option("--event", f.event, "event id");
  tile->add_option("--image", f.image, "image id (default: raster file stem)");
  tile->add_option("--out-dir", f.out_dir, "output directory");
  tile->add_option("--manifest", f.manifest, "manifest path (default: <out-dir>/manifest.jsonl)");
  tile->add_option("--tile-size", f.dataset_tile_size, "dataset tile size in pixels");
  tile->add_option("--resolution-m", f.resolution_m, "meters per pixel override");
  tile->add_flag("--append", f.append, "add to an existing manifest");
  tile->add_flag("--write-labels", f.write_labels, "write label PNGs");
  tile->add_flag("--write-images", f.write_images, "write RGB PNGs");

  CLI::App* split = app.add_subcommand("split", "pick one test image per event");
  split->add_option("--manifest", f.manifest, "tile manifest (JSON lines)");
  split->add_option("--out", f.out, "output manifest (default: in place)");
  split->add_option("--score", f.score, "mean_tile_entropy or image_entropy");

  CLI::App* sample = app.add_subcommand("sample", "entropy-weighted tile sampling");
  sample->add_option("--manifest", f.manifest, "tile manifest (JSON lines)");
  sample->add_option("--n", f.n, "number of draws");
  sample->add_option("--seed", f.seed, "random seed (default: config seed)");
  sample->add_option("--out", f.out, "output JSON lines (default: stdout)");

  CLI::App* eval = app.add_subcommand("eval", "compare label tiles");
  eval->add_option("--gt", f.gt, "ground-truth tile directory");
  eval->add_option("--pred", f.pred, "prediction tile directory");
  eval->add_option("--tau", f.tau, "confidence cutoff for score maps");
  eval->add_option("--method", f.method, "row label");
  eval->add_option("--json", f.json_out, "write the report as JSON");

  CLI::App* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("--manifest", f.manifest, "tile manifest (JSON lines)");
  stats->add_option("--annotations", f.event_annotations, "EVENT=PATH (repeatable)");
  stats->add_option("--json", f.json_out, "write the report as JSON");

  CLI::App* scenario = app.add_subcommand("scenario", "write the synthetic mock scenario");
  scenario->add_option("--out-dir", f.out_dir, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, std::cerr) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (f.log_level) log::set_level(parse_level(*f.log_level));
    const PipelineConfig cfg = resolve_config(f);
    if (f.print_config) {
      out << to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }
    if (annotate->parsed()) return cmd_annotate(cfg, f.resume, out);
    if (tile->parsed()) return cmd_tile(cfg, f, out);
    if (split->parsed()) return cmd_split(cfg, f, out);
    if (sample->parsed()) return cmd_sample(cfg, f, out);
    if (eval->parsed()) return cmd_eval(cfg, f, out);
    if (stats->parsed()) return cmd_stats(f, out);
    if (scenario->parsed()) return cmd_scenario(f, out);
    return kExitInput;
  } catch (const BackendError& e) {
    log::error("backend failure", {{"error", e.what()}, {"retryable", e.retryable()}});
    return kExitBackend;
  } catch (const InputError& e) {
    log::error("input error", {{"error", e.what()}});
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    log::error("input error", {{"error", e.what()}});
    return kExitInput;
  }
}

}  // namespace fmars::cli

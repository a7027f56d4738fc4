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


#include "fmars/eval/run.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "fmars/core/error.hpp"
#include "fmars/core/log.hpp"
#include "fmars/core/parallel.hpp"
#include "fmars/eval/softmax.hpp"
#include "fmars/ingest/png.hpp"

namespace fmars::eval {
namespace {

namespace fs = std::filesystem;

std::map<std::string, fs::path> list_tiles(const fs::path& dir, bool allow_scores) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext != ".png" && !(allow_scores && ext == ".json")) continue;
    const std::string id = entry.path().stem().string();
    if (!out.emplace(id, entry.path()).second) {
      throw InputError("tile " + id + " appears twice in " + dir.string());
    }
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < 20; ++i) s += (i ? ", " : "") + ids[i];
  if (ids.size() > 20) s += fmt::format(" and {} more", ids.size() - 20);
  return s;
}

geo::LabelRaster load_prediction(const fs::path& path, double tau) {
  if (path.extension() == ".json") return threshold_softmax(read_score_map(path), tau);
  geo::LabelRaster out;
  static_cast<geo::Grid8&>(out) = ingest::read_png_gray(path);
  return out;
}

std::string cell(const std::optional<double>& v) { return v ? format_percent(*v) : "-"; }

}  // namespace

void EvalConfig::validate() const {
  if (!(confidence_tau >= 0.0 && confidence_tau <= 1.0)) {
    throw InputError("confidence_tau must lie in [0, 1]");
  }
}

EvalReport eval_run(const fs::path& gt_dir, const fs::path& pred_dir, const EvalConfig& cfg) {
  cfg.validate();
  const auto gt = list_tiles(gt_dir, false);
  const auto pred = list_tiles(pred_dir, true);
  std::vector<std::string> missing_pred, missing_gt, shared;
  for (const auto& [id, _] : gt) (pred.count(id) ? shared : missing_pred).push_back(id);
  for (const auto& [id, _] : pred) {
    if (!gt.count(id)) missing_gt.push_back(id);
  }
  if (shared.empty()) {
    throw InputError("no tile ids shared between " + gt_dir.string() + " and " + pred_dir.string());
  }
  if (!missing_pred.empty() || !missing_gt.empty()) {
    std::string msg = "unmatched tiles;";
    if (!missing_pred.empty()) msg += " no prediction for: " + join_ids(missing_pred) + ";";
    if (!missing_gt.empty()) msg += " no ground truth for: " + join_ids(missing_gt) + ";";
    throw InputError(msg);
  }

  std::vector<ConfusionMatrix> per_tile(shared.size());
  parallel_for(shared.size(), cfg.workers, [&](std::size_t i) {
    const std::string& id = shared[i];
    geo::LabelRaster g;
    static_cast<geo::Grid8&>(g) = ingest::read_png_gray(gt.at(id));
    try {
      per_tile[i].accumulate(g, load_prediction(pred.at(id), cfg.confidence_tau));
    } catch (const InputError& e) {
      throw InputError("tile " + id + ": " + e.what());
    }
  });
  EvalReport report;
  report.method = cfg.method;
  report.tiles = shared.size();
  for (const ConfusionMatrix& cm : per_tile) report.confusion.merge(cm);
  report.metrics = class_metrics(report.confusion);
  log::info("evaluated", {{"tiles", report.tiles}, {"pixels", report.confusion.total()}});
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  auto pct = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return std::stod(format_percent(*v));
  };
  nlohmann::json classes = nlohmann::json::object();
  for (int c = 0; c < kClasses; ++c) {
    const ClassScore& s = report.metrics.per_class[c];
    classes[std::string(annotate::class_name(static_cast<annotate::ClassLabel>(c)))] = {
        {"acc", pct(s.acc)}, {"iou", pct(s.iou)}};
  }
  return {{"method", report.method},
          {"tiles", report.tiles},
          {"confusion", report.confusion.counts()},
          {"classes", classes},
          {"mAcc", pct(report.metrics.m_acc)},
          {"mIoU", pct(report.metrics.m_iou)}};
}

std::string format_table(const EvalReport& report) {
  static constexpr const char* kHeads[kClasses] = {"Background", "Roads", "High Veg.", "Buildings"};
  const int name_w = static_cast<int>(std::max<std::size_t>(report.method.size(), 6));
  std::string head = fmt::format("{:<{}}", "Method", name_w);
  std::string sub = fmt::format("{:<{}}", "", name_w);
  std::string row = fmt::format("{:<{}}", report.method, name_w);
  for (int c = 0; c < kClasses; ++c) {
    const ClassScore& s = report.metrics.per_class[c];
    head += fmt::format(" | {:^15}", kHeads[c]);
    sub += fmt::format(" | {:>7} {:>7}", "Acc.", "IoU");
    row += fmt::format(" | {:>7} {:>7}", cell(s.acc), cell(s.iou));
  }
  head += fmt::format(" | {:>6} | {:>6}\n", "mAcc.", "mIoU");
  sub += fmt::format(" | {:>6} | {:>6}\n", "", "");
  row += fmt::format(" | {:>6} | {:>6}\n", format_percent(report.metrics.m_acc),
                     format_percent(report.metrics.m_iou));
  return head + sub + row;
}

}  // namespace fmars::eval

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


// Evaluation over directories of label tiles.
//
// Ground truth: <id>.png, 8-bit single-band class ids. Predictions: <id>.png
// with class ids, or <id>.json score maps decoded with threshold_softmax().

#pragma once

#include <filesystem>
#include <string>

#include "fmars/eval/confusion.hpp"
#include "fmars/eval/metrics.hpp"
#include "json.hpp"

namespace fmars::eval {

struct EvalConfig {
  double confidence_tau = 0.9;
  std::size_t workers = 0;
  std::string method = "prediction";  // row label in the table

  void validate() const;
};

struct EvalReport {
  std::string method;
  std::size_t tiles = 0;
  ConfusionMatrix confusion;
  Metrics metrics;
};

/// Throws InputError listing unmatched tile ids, or if no tile is shared.
EvalReport eval_run(const std::filesystem::path& gt_dir, const std::filesystem::path& pred_dir,
                    const EvalConfig& cfg = {});

nlohmann::json to_json(const EvalReport& report);

/// Aligned text table: method, Acc and IoU per class, mAcc, mIoU.
std::string format_table(const EvalReport& report);

}  // namespace fmars::eval

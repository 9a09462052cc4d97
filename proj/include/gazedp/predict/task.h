// Copyright 2026 The gazedp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAZEDP_PREDICT_TASK_H_
#define GAZEDP_PREDICT_TASK_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gazedp/events/features.h"
#include "gazedp/ingest/dataset.h"
#include "json.hpp"

namespace gazedp::predict {

enum class TaskKind {
  kBinaryPrivacy,
  kLevelPrivacy,
  kContextualPrivacy,
  kAttributeRecognition,
  kExpertise,
  kIdentification,
};

enum class SplitKind { kPersonIndependent, kPersonSpecific };

std::string_view TaskKindName(TaskKind kind);
std::optional<TaskKind> TaskKindFromName(std::string_view name);
std::string_view SplitKindName(SplitKind kind);
std::optional<SplitKind> SplitKindFromName(std::string_view name);

struct TaskSpec {
  TaskKind task = TaskKind::kBinaryPrivacy;
  SplitKind split = SplitKind::kPersonIndependent;
  // Binary task: ratings <= private_cutoff are private, >= safe_from are
  // safe, anything between is dropped.
  int private_cutoff = 3;
  int safe_from = 5;
  // Stimulus-based tasks use free-viewing trials only.
  bool free_view_only = true;
};

nlohmann::json TaskSpecToJson(const TaskSpec& spec);

// Design matrix and labels for one task. Rows follow dataset trial order
// after filtering; `trial_index` maps each row back to its trial.
struct LabeledData {
  Eigen::MatrixXd X;
  std::vector<int> y;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  std::vector<std::string> groups;  // participant id per row
  std::vector<std::size_t> trial_index;

  int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Builds rows from precomputed per-trial features (one per trial of `d`).
// Trials whose features are invalid are skipped. Contextual privacy appends
// age, one-hot gender, one-hot nationality and the expert flag.
LabeledData BuildTaskData(const TaskSpec& spec, const ingest::Dataset& d,
                          const std::vector<events::FeatureVector>& features);

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_TASK_H_

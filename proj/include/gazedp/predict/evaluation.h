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

#ifndef GAZEDP_PREDICT_EVALUATION_H_
#define GAZEDP_PREDICT_EVALUATION_H_

#include <optional>
#include <string>
#include <vector>

#include "gazedp/ingest/dataset.h"
#include "gazedp/predict/classifiers.h"
#include "gazedp/predict/metrics.h"
#include "gazedp/predict/task.h"
#include "json.hpp"

namespace gazedp::predict {

struct EvalReport {
  TaskSpec task;
  ModelSpec model;
  int folds = 0;
  std::size_t rows = 0;
  std::vector<std::string> class_names;
  Confusion confusion;
  // Pooled over every held-out prediction: trace / total.
  double accuracy = 0;
  std::vector<double> precision;
  std::vector<double> recall;
  // person_specific only: unweighted mean of per-participant accuracies.
  std::optional<double> mean_participant_accuracy;
  // attribute_recognition only, on pooled out-of-fold scores.
  std::optional<CMapResult> c_map;
  // person_specific: participants with fewer rows than folds.
  std::vector<std::string> skipped_participants;
  // Training folds holding a single class, answered by a constant model.
  int constant_fallbacks = 0;
  // Held-out prediction per data row, -1 for rows never tested. Not
  // serialised.
  std::vector<int> oof_predictions;
};

nlohmann::json ToJson(const EvalReport& r);

// K-fold evaluation. person_independent: each participant's rows are
// shuffled and cut into K slices, and fold f tests on every participant's
// slice f. person_specific: K folds within each participant, one model per
// (participant, fold). Fold assignment and models derive from model.seed.
// Throws ArgumentError for folds < 2 or empty data.
EvalReport CrossValidate(const ModelSpec& model, const TaskSpec& task,
                         const LabeledData& data, int folds);

// Extracts features with default detector settings, then evaluates.
EvalReport CrossValidate(const ModelSpec& model, const TaskSpec& task,
                         const ingest::Dataset& d, int folds);

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_EVALUATION_H_

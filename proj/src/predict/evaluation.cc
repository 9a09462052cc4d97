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

#include "gazedp/predict/evaluation.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/events/features.h"

namespace gazedp::predict {
namespace {

Eigen::MatrixXd Rows(const Eigen::MatrixXd& X, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), X.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

std::vector<int> Labels(const std::vector<int>& y, const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(y[i]);
  return out;
}

// Row indices per participant in first-appearance order.
std::vector<std::pair<std::string, std::vector<std::size_t>>> GroupRows(
    const LabeledData& data) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < data.groups.size(); ++i) {
    auto [it, inserted] = where.emplace(data.groups[i], groups.size());
    if (inserted) groups.push_back({data.groups[i], {}});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

// Fold index per position of a shuffled list of n rows: contiguous slices.
std::vector<std::vector<std::size_t>> Slices(std::vector<std::size_t> rows,
                                             int folds, uint64_t seed) {
  Rng rng = MakeRng(seed);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  const std::size_t n = rows.size();
  for (std::size_t j = 0; j < n; ++j) {
    out[j * static_cast<std::size_t>(folds) / n].push_back(rows[j]);
  }
  return out;
}

struct FoldOutput {
  std::vector<int> predicted;
  Eigen::MatrixXd scores;
  bool constant = false;
};

FoldOutput RunFold(const ModelSpec& spec, const LabeledData& data,
                   const std::vector<std::size_t>& train,
                   const std::vector<std::size_t>& test, uint64_t seed) {
  ModelSpec s = spec;
  s.seed = seed;
  const Eigen::MatrixXd Xtr = Rows(data.X, train);
  const std::vector<int> ytr = Labels(data.y, train);
  const bool single =
      std::all_of(ytr.begin(), ytr.end(), [&](int v) { return v == ytr.front(); });
  const Model m = single ? TrainConstant(s, Xtr, ytr, data.num_classes())
                         : Train(s, Xtr, ytr, data.num_classes());
  const Eigen::MatrixXd Xte = Rows(data.X, test);
  FoldOutput out;
  out.scores = m.Scores(Xte);
  out.predicted = m.Predict(Xte);
  out.constant = single;
  return out;
}

}  // namespace

nlohmann::json ToJson(const EvalReport& r) {
  nlohmann::json j = {{"task", TaskSpecToJson(r.task)},
                      {"model", ModelSpecToJson(r.model)},
                      {"folds", r.folds},
                      {"rows", r.rows},
                      {"class_names", r.class_names},
                      {"confusion", r.confusion.counts},
                      {"accuracy", r.accuracy},
                      {"precision", r.precision},
                      {"recall", r.recall},
                      {"skipped_participants", r.skipped_participants},
                      {"constant_fallbacks", r.constant_fallbacks}};
  if (r.mean_participant_accuracy) {
    j["mean_participant_accuracy"] = *r.mean_participant_accuracy;
  }
  if (r.c_map) {
    nlohmann::json per = nlohmann::json::array();
    for (double v : r.c_map->per_class) {
      per.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
    }
    j["c_map"] = {{"value", r.c_map->value},
                  {"per_class", per},
                  {"excluded_classes", r.c_map->excluded}};
  }
  return j;
}

EvalReport CrossValidate(const ModelSpec& model, const TaskSpec& task,
                         const LabeledData& data, int folds) {
  CheckModelSpec(model);
  if (folds < 2) throw ArgumentError("folds must be at least 2");
  if (data.y.empty()) throw ArgumentError("no rows to evaluate");

  EvalReport report;
  report.task = task;
  report.model = model;
  report.folds = folds;
  report.rows = data.y.size();
  report.class_names = data.class_names;
  report.confusion = Confusion(data.num_classes());

  const bool want_cmap = task.task == TaskKind::kAttributeRecognition;
  Eigen::MatrixXd oof_scores =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data.y.size()), data.num_classes());
  std::vector<std::size_t> scored_rows;
  report.oof_predictions.assign(data.y.size(), -1);

  const auto groups = GroupRows(data);
  const uint64_t split_seed = DeriveSeed(model.seed, "split");

  auto record = [&](const std::vector<std::size_t>& test, const FoldOutput& out,
                    Confusion* local) {
    for (std::size_t i = 0; i < test.size(); ++i) {
      report.confusion.Add(data.y[test[i]], out.predicted[i]);
      if (local) local->Add(data.y[test[i]], out.predicted[i]);
      oof_scores.row(static_cast<Eigen::Index>(test[i])) =
          out.scores.row(static_cast<Eigen::Index>(i));
      scored_rows.push_back(test[i]);
      report.oof_predictions[test[i]] = out.predicted[i];
    }
    if (out.constant) ++report.constant_fallbacks;
  };

  if (task.split == SplitKind::kPersonIndependent) {
    std::vector<std::vector<std::size_t>> test_sets(static_cast<std::size_t>(folds));
    for (const auto& [pid, rows] : groups) {
      const auto slices = Slices(rows, folds, DeriveSeed(split_seed, pid));
      for (int f = 0; f < folds; ++f) {
        auto& dst = test_sets[static_cast<std::size_t>(f)];
        dst.insert(dst.end(), slices[static_cast<std::size_t>(f)].begin(),
                   slices[static_cast<std::size_t>(f)].end());
      }
    }
    for (int f = 0; f < folds; ++f) {
      auto test = test_sets[static_cast<std::size_t>(f)];
      if (test.empty()) continue;
      std::sort(test.begin(), test.end());
      std::vector<std::size_t> train;
      std::size_t t = 0;
      for (std::size_t i = 0; i < data.y.size(); ++i) {
        if (t < test.size() && test[t] == i) {
          ++t;
        } else {
          train.push_back(i);
        }
      }
      if (train.empty()) continue;
      record(test,
             RunFold(model, data, train, test,
                     DeriveSeed(model.seed, static_cast<uint64_t>(f))),
             nullptr);
    }
  } else {
    double acc_sum = 0;
    int acc_count = 0;
    for (const auto& [pid, rows] : groups) {
      if (rows.size() < static_cast<std::size_t>(folds)) {
        report.skipped_participants.push_back(pid);
        continue;
      }
      const auto slices = Slices(rows, folds, DeriveSeed(split_seed, pid));
      Confusion local(data.num_classes());
      for (int f = 0; f < folds; ++f) {
        const auto& test = slices[static_cast<std::size_t>(f)];
        std::vector<std::size_t> train;
        for (int g = 0; g < folds; ++g) {
          if (g == f) continue;
          const auto& s = slices[static_cast<std::size_t>(g)];
          train.insert(train.end(), s.begin(), s.end());
        }
        std::sort(train.begin(), train.end());
        const uint64_t seed = DeriveSeed(DeriveSeed(model.seed, pid),
                                         static_cast<uint64_t>(f));
        record(test, RunFold(model, data, train, test, seed), &local);
      }
      acc_sum += local.Accuracy();
      ++acc_count;
    }
    if (acc_count == 0) {
      throw ArgumentError("every participant has fewer rows than folds");
    }
    report.mean_participant_accuracy = acc_sum / acc_count;
  }

  report.accuracy = report.confusion.Accuracy();
  for (int c = 0; c < data.num_classes(); ++c) {
    report.precision.push_back(report.confusion.Precision(c));
    report.recall.push_back(report.confusion.Recall(c));
  }
  if (want_cmap && !scored_rows.empty()) {
    std::sort(scored_rows.begin(), scored_rows.end());
    report.c_map = ClassMeanAveragePrecision(Rows(oof_scores, scored_rows),
                                             Labels(data.y, scored_rows));
  }
  return report;
}

EvalReport CrossValidate(const ModelSpec& model, const TaskSpec& task,
                         const ingest::Dataset& d, int folds) {
  const auto features = events::ExtractAll(d);
  return CrossValidate(model, task, BuildTaskData(task, d, features), folds);
}

}  // namespace gazedp::predict

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

#include "gazedp/predict/task.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "gazedp/common/errors.h"

namespace gazedp::predict {
namespace {

constexpr std::array<std::pair<TaskKind, std::string_view>, 6> kTaskNames{{
    {TaskKind::kBinaryPrivacy, "binary_privacy"},
    {TaskKind::kLevelPrivacy, "level_privacy"},
    {TaskKind::kContextualPrivacy, "contextual_privacy"},
    {TaskKind::kAttributeRecognition, "attribute_recognition"},
    {TaskKind::kExpertise, "expertise"},
    {TaskKind::kIdentification, "identification"},
}};

bool StimulusBased(TaskKind t) {
  return t == TaskKind::kBinaryPrivacy || t == TaskKind::kLevelPrivacy ||
         t == TaskKind::kContextualPrivacy ||
         t == TaskKind::kAttributeRecognition;
}

}  // namespace

std::string_view TaskKindName(TaskKind kind) {
  for (const auto& [k, n] : kTaskNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

std::optional<TaskKind> TaskKindFromName(std::string_view name) {
  for (const auto& [k, n] : kTaskNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view SplitKindName(SplitKind kind) {
  return kind == SplitKind::kPersonIndependent ? "person_independent"
                                               : "person_specific";
}

std::optional<SplitKind> SplitKindFromName(std::string_view name) {
  if (name == "person_independent") return SplitKind::kPersonIndependent;
  if (name == "person_specific") return SplitKind::kPersonSpecific;
  return std::nullopt;
}

nlohmann::json TaskSpecToJson(const TaskSpec& spec) {
  return {{"task", TaskKindName(spec.task)},
          {"split", SplitKindName(spec.split)},
          {"private_cutoff", spec.private_cutoff},
          {"safe_from", spec.safe_from},
          {"free_view_only", spec.free_view_only}};
}

LabeledData BuildTaskData(const TaskSpec& spec, const ingest::Dataset& d,
                          const std::vector<events::FeatureVector>& features) {
  if (features.size() != d.trials.size()) {
    throw ArgumentError("need one feature vector per trial");
  }
  if (spec.task == TaskKind::kBinaryPrivacy &&
      !(spec.private_cutoff < spec.safe_from)) {
    throw ArgumentError("private_cutoff must be below safe_from");
  }

  LabeledData out;
  const auto& gaze_names = events::FeatureVector::GazeNames();
  out.feature_names.assign(gaze_names.begin(), gaze_names.end());

  // Context vocabularies, sorted for a stable encoding.
  std::set<std::string> genders, nationalities;
  for (const auto& p : d.profiles) {
    genders.insert(p.gender);
    nationalities.insert(p.nationality);
  }
  const bool context = spec.task == TaskKind::kContextualPrivacy;
  if (context) {
    out.feature_names.push_back("age_years");
    for (const auto& g : genders) out.feature_names.push_back("gender=" + g);
    for (const auto& n : nationalities) {
      out.feature_names.push_back("nationality=" + n);
    }
    out.feature_names.push_back("privacy_expert");
  }

  // Label vocabulary.
  std::vector<std::string> names;
  switch (spec.task) {
    case TaskKind::kBinaryPrivacy:
      names = {"private", "safe"};
      break;
    case TaskKind::kLevelPrivacy:
    case TaskKind::kContextualPrivacy:
      for (int l = 1; l <= d.levels; ++l) names.push_back(std::to_string(l));
      break;
    case TaskKind::kAttributeRecognition: {
      std::set<std::string> attrs;
      for (const auto& t : d.trials) attrs.insert(t.attribute);
      names.assign(attrs.begin(), attrs.end());
      break;
    }
    case TaskKind::kExpertise:
      names = {"non_expert", "expert"};
      break;
    case TaskKind::kIdentification:
      for (const auto& p : d.profiles) names.push_back(p.participant_id);
      break;
  }
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    index[names[i]] = static_cast<int>(i);
  }
  out.class_names = names;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    const ingest::Trial& t = d.trials[i];
    const events::FeatureVector& f = features[i];
    if (!f.valid) continue;
    if (StimulusBased(spec.task) && spec.free_view_only &&
        t.task_kind != ingest::TaskKind::kFreeView) {
      continue;
    }
    const ingest::ParticipantProfile* profile = d.FindProfile(t.participant_id);
    if (profile == nullptr) {
      throw ArgumentError("trial references unknown participant " +
                          t.participant_id);
    }
    int label = -1;
    switch (spec.task) {
      case TaskKind::kBinaryPrivacy:
        if (t.rating_l <= spec.private_cutoff) {
          label = 0;
        } else if (t.rating_l >= spec.safe_from) {
          label = 1;
        }
        break;
      case TaskKind::kLevelPrivacy:
      case TaskKind::kContextualPrivacy:
        label = t.rating_l - 1;
        break;
      case TaskKind::kAttributeRecognition:
        label = index.at(t.attribute);
        break;
      case TaskKind::kExpertise:
        label = profile->privacy_expert ? 1 : 0;
        break;
      case TaskKind::kIdentification:
        label = index.at(t.participant_id);
        break;
    }
    if (label < 0) continue;

    const auto gaze = f.GazeValues();
    std::vector<double> row(gaze.begin(), gaze.end());
    if (context) {
      row.push_back(profile->age_years);
      for (const auto& g : genders) row.push_back(profile->gender == g);
      for (const auto& n : nationalities) {
        row.push_back(profile->nationality == n);
      }
      row.push_back(profile->privacy_expert ? 1.0 : 0.0);
    }
    rows.push_back(std::move(row));
    out.y.push_back(label);
    out.groups.push_back(t.participant_id);
    out.trial_index.push_back(i);
  }

  out.X.resize(static_cast<Eigen::Index>(rows.size()),
               static_cast<Eigen::Index>(out.feature_names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return out;
}

}  // namespace gazedp::predict

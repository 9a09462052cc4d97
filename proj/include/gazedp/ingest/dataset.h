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

#ifndef GAZEDP_INGEST_DATASET_H_
#define GAZEDP_INGEST_DATASET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazedp/ingest/vocabulary.h"

namespace gazedp::ingest {

// Recording setup. Defaults are the lab configuration the schema was built
// around: a 1920x1080 px, 545x303 mm screen viewed from 700 mm at 2 kHz.
struct ScreenGeometry {
  double width_px = 1920;
  double height_px = 1080;
  double width_mm = 545;
  double height_mm = 303;
  double eye_distance_mm = 700;
  double sample_rate_hz = 2000;

  bool operator==(const ScreenGeometry&) const = default;
};

struct GazeSample {
  int64_t t_us = 0;  // since trial onset
  double x_px = 0;
  double y_px = 0;
  std::optional<double> pupil;  // empty when the tracker lost the pupil
  bool valid = true;

  bool operator==(const GazeSample&) const = default;
};

struct ParticipantProfile {
  std::string participant_id;
  int age_years = 18;
  std::string gender;
  std::string nationality;
  bool privacy_expert = false;

  bool operator==(const ParticipantProfile&) const = default;
};

enum class TaskKind { kFreeView, kSearch };

std::string_view TaskKindName(TaskKind kind);
std::optional<TaskKind> TaskKindFromName(std::string_view name);

struct Trial {
  std::string participant_id;
  int block = 1;
  TaskKind task_kind = TaskKind::kFreeView;
  std::string stimulus_id;
  std::string attribute;
  Category category = Category::kPersonalInformation;
  int rating_l = 1;  // 1 = very private ... L = very safe
  double response_time_ms = 0;
  std::vector<GazeSample> samples;

  bool operator==(const Trial&) const = default;
};

inline constexpr int kDefaultLevels = 7;

struct Dataset {
  ScreenGeometry geometry;
  std::vector<ParticipantProfile> profiles;
  std::vector<Trial> trials;
  int levels = kDefaultLevels;

  const ParticipantProfile* FindProfile(std::string_view id) const;

  bool operator==(const Dataset&) const = default;
};

struct Violation {
  std::string location;
  std::string message;
};

// Every broken invariant, in dataset order. Empty iff the dataset is valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport ValidateDataset(const Dataset& d);

// Human-readable handle for the i-th trial, used in diagnostics.
std::string DescribeTrial(const Dataset& d, std::size_t index);

}  // namespace gazedp::ingest

#endif  // GAZEDP_INGEST_DATASET_H_

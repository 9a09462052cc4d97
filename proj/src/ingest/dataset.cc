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

#include "gazedp/ingest/dataset.h"

#include <cmath>
#include <set>
#include <string>

namespace gazedp::ingest {

std::string_view TaskKindName(TaskKind kind) {
  return kind == TaskKind::kFreeView ? "free_view" : "search";
}

std::optional<TaskKind> TaskKindFromName(std::string_view name) {
  if (name == "free_view") return TaskKind::kFreeView;
  if (name == "search") return TaskKind::kSearch;
  return std::nullopt;
}

const ParticipantProfile* Dataset::FindProfile(std::string_view id) const {
  for (const ParticipantProfile& p : profiles) {
    if (p.participant_id == id) return &p;
  }
  return nullptr;
}

std::string DescribeTrial(const Dataset& d, std::size_t index) {
  const Trial& t = d.trials[index];
  return "trial " + std::to_string(index) + " (participant " +
         t.participant_id + ", stimulus " + t.stimulus_id + ", " +
         std::string(TaskKindName(t.task_kind)) + ")";
}

ValidationReport ValidateDataset(const Dataset& d) {
  ValidationReport report;
  auto add = [&report](std::string location, std::string message) {
    report.violations.push_back({std::move(location), std::move(message)});
  };

  const ScreenGeometry& g = d.geometry;
  auto positive = [](double v) { return std::isfinite(v) && v > 0; };
  if (!positive(g.width_px) || !positive(g.height_px) ||
      !positive(g.width_mm) || !positive(g.height_mm) ||
      !positive(g.eye_distance_mm)) {
    add("geometry", "all geometry fields must be strictly positive");
  }
  if (!(g.sample_rate_hz >= 1)) add("geometry", "sample_rate_hz must be >= 1");
  if (d.levels < 2) add("dataset", "levels must be >= 2");

  std::set<std::string, std::less<>> ids;
  for (std::size_t i = 0; i < d.profiles.size(); ++i) {
    const ParticipantProfile& p = d.profiles[i];
    const std::string where = "participant " + p.participant_id;
    if (p.participant_id.empty()) add("participant #" + std::to_string(i),
                                      "empty participant_id");
    if (!ids.insert(p.participant_id).second) {
      add(where, "duplicate participant_id");
    }
    if (p.age_years < 18 || p.age_years > 120) {
      add(where, "age_years " + std::to_string(p.age_years) +
                     " outside [18, 120]");
    }
  }

  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    const Trial& t = d.trials[i];
    const std::string where = DescribeTrial(d, i);
    if (!ids.contains(t.participant_id)) {
      add(where, "participant not present in profiles");
    }
    if (t.block < 1 || t.block > 4) {
      add(where, "block " + std::to_string(t.block) + " outside [1, 4]");
    }
    if (t.rating_l < 1 || t.rating_l > d.levels) {
      add(where, "rating " + std::to_string(t.rating_l) + " outside [1, " +
                     std::to_string(d.levels) + "]");
    }
    if (!(t.response_time_ms >= 0)) add(where, "negative response_time_ms");
    const AttributeInfo* attr = FindAttribute(t.attribute);
    if (attr == nullptr) {
      add(where, "unknown attribute '" + t.attribute + "'");
    } else {
      if (attr->category != t.category) {
        add(where, "attribute '" + t.attribute + "' belongs to category '" +
                       std::string(CategoryName(attr->category)) + "', not '" +
                       std::string(CategoryName(t.category)) + "'");
      }
      if (attr->block != t.block) {
        add(where, "attribute '" + t.attribute + "' is presented in block " +
                       std::to_string(attr->block));
      }
    }
    if (t.samples.empty()) add(where, "no gaze samples");
    for (std::size_t s = 0; s < t.samples.size(); ++s) {
      const GazeSample& smp = t.samples[s];
      if (s > 0 && smp.t_us < t.samples[s - 1].t_us) {
        add(where, "sample " + std::to_string(s) +
                       ": timestamp decreases (nonmonotone t_us)");
      }
      if (smp.pupil && !(*smp.pupil >= 0)) {
        add(where, "sample " + std::to_string(s) + ": negative pupil");
      }
      if (!std::isfinite(smp.x_px) || !std::isfinite(smp.y_px)) {
        add(where, "sample " + std::to_string(s) + ": non-finite coordinate");
      }
    }
  }
  return report;
}

}  // namespace gazedp::ingest

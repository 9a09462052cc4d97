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

#include "gazedp/events/features.h"

#include <cmath>
#include <ostream>

#include "gazedp/common/csv.h"
#include "gazedp/events/geometry.h"

namespace gazedp::events {

const std::array<std::string_view, FeatureVector::kNumGazeFeatures>&
FeatureVector::GazeNames() {
  static const std::array<std::string_view, kNumGazeFeatures> kNames = {
      "fixation_count",     "mean_fixation_ms",
      "total_fixation_ms",  "saccade_count",
      "mean_amplitude_deg", "mean_peak_velocity_deg_s",
      "pupil_mean",         "pupil_std",
      "scanpath_len_deg",   "response_time_ms",
  };
  return kNames;
}

std::array<double, FeatureVector::kNumGazeFeatures> FeatureVector::GazeValues()
    const {
  return {fixation_count,     mean_fixation_ms,
          total_fixation_ms,  saccade_count,
          mean_amplitude_deg, mean_peak_velocity_deg_s,
          pupil_mean,         pupil_std,
          scanpath_len_deg,   response_time_ms};
}

std::optional<double> FeatureVector::Get(std::string_view name) const {
  const auto& names = GazeNames();
  const auto values = GazeValues();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  return std::nullopt;
}

FeatureVector ExtractFeatures(const ingest::Trial& trial,
                              const ingest::ScreenGeometry& g,
                              const DetectorParams& params,
                              const ingest::ParticipantProfile* profile) {
  FeatureVector f;
  f.response_time_ms = trial.response_time_ms;
  if (profile != nullptr) {
    f.context = ContextFeatures{profile->age_years, profile->gender,
                                profile->nationality, profile->privacy_expert};
  }

  std::vector<double> pupils;
  bool any_valid = false;
  for (const ingest::GazeSample& s : trial.samples) {
    if (!s.valid) continue;
    any_valid = true;
    if (s.pupil) pupils.push_back(*s.pupil);
  }
  if (!any_valid) {
    f.valid = false;
    return f;
  }
  if (!pupils.empty()) {
    f.pupil_valid = true;
    const double n = static_cast<double>(pupils.size());
    for (double p : pupils) f.pupil_mean += p;
    f.pupil_mean /= n;
    double ss = 0;
    for (double p : pupils) ss += (p - f.pupil_mean) * (p - f.pupil_mean);
    f.pupil_std = std::sqrt(ss / n);
  }

  const Events events = DetectEvents(trial.samples, g, params);
  const PixelsPerDegree ppd = PxPerDegree(g);

  f.fixation_count = static_cast<double>(events.fixations.size());
  if (!events.fixations.empty()) {
    f.fixations_valid = true;
    for (const Fixation& fx : events.fixations) {
      f.total_fixation_ms += fx.duration_ms();
    }
    f.mean_fixation_ms = f.total_fixation_ms / f.fixation_count;
    for (std::size_t i = 1; i < events.fixations.size(); ++i) {
      const Fixation& a = events.fixations[i - 1];
      const Fixation& b = events.fixations[i];
      f.scanpath_len_deg +=
          std::hypot((b.centroid_x_px - a.centroid_x_px) / ppd.horizontal,
                     (b.centroid_y_px - a.centroid_y_px) / ppd.vertical);
    }
  }
  f.saccade_count = static_cast<double>(events.saccades.size());
  if (!events.saccades.empty()) {
    f.saccades_valid = true;
    for (const Saccade& s : events.saccades) {
      f.mean_amplitude_deg += s.amplitude_deg;
      f.mean_peak_velocity_deg_s += s.peak_velocity_deg_s;
    }
    f.mean_amplitude_deg /= f.saccade_count;
    f.mean_peak_velocity_deg_s /= f.saccade_count;
  }
  return f;
}

std::vector<FeatureVector> ExtractAll(const ingest::Dataset& d,
                                      const DetectorParams& params,
                                      bool with_context) {
  std::vector<FeatureVector> out;
  out.reserve(d.trials.size());
  for (const ingest::Trial& t : d.trials) {
    out.push_back(ExtractFeatures(
        t, d.geometry, params,
        with_context ? d.FindProfile(t.participant_id) : nullptr));
  }
  return out;
}

void WriteFeatureTable(const ingest::Dataset& d,
                       const std::vector<FeatureVector>& features,
                       std::ostream& out) {
  const bool context = !features.empty() && features.front().context;
  std::vector<std::string> header = {"participant", "task", "stimulus",
                                     "attribute", "rating"};
  for (std::string_view n : FeatureVector::GazeNames()) header.emplace_back(n);
  for (const char* n :
       {"valid", "fixations_valid", "saccades_valid", "pupil_valid"}) {
    header.emplace_back(n);
  }
  if (context) {
    for (const char* n : {"age_years", "gender", "nationality", "expert"}) {
      header.emplace_back(n);
    }
  }
  out << csv::JoinLine(header) << '\n';
  for (std::size_t i = 0; i < features.size(); ++i) {
    const ingest::Trial& t = d.trials[i];
    const FeatureVector& f = features[i];
    std::vector<std::string> row = {
        t.participant_id, std::string(ingest::TaskKindName(t.task_kind)),
        t.stimulus_id, t.attribute, std::to_string(t.rating_l)};
    for (double v : f.GazeValues()) row.push_back(csv::FormatDouble(v));
    for (bool b : {f.valid, f.fixations_valid, f.saccades_valid, f.pupil_valid}) {
      row.emplace_back(b ? "1" : "0");
    }
    if (context && f.context) {
      row.push_back(std::to_string(f.context->age_years));
      row.push_back(f.context->gender);
      row.push_back(f.context->nationality);
      row.emplace_back(f.context->privacy_expert ? "1" : "0");
    }
    out << csv::JoinLine(row) << '\n';
  }
}

}  // namespace gazedp::events

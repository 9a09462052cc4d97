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

#ifndef GAZEDP_EVENTS_FEATURES_H_
#define GAZEDP_EVENTS_FEATURES_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazedp/events/detectors.h"
#include "gazedp/ingest/dataset.h"

namespace gazedp::events {

// Participant context attached for the contextual prediction task. Encoded
// numerically (age, one-hot gender and nationality, expert flag) by the
// predict module, which owns the vocabulary.
struct ContextFeatures {
  int age_years = 0;
  std::string gender;
  std::string nationality;
  bool privacy_expert = false;
};

// Per-trial gaze statistics. Means over an empty event set are zero and the
// matching *_valid flag is false.
struct FeatureVector {
  double fixation_count = 0;
  double mean_fixation_ms = 0;
  double total_fixation_ms = 0;
  double saccade_count = 0;
  double mean_amplitude_deg = 0;
  double mean_peak_velocity_deg_s = 0;
  double pupil_mean = 0;
  double pupil_std = 0;
  double scanpath_len_deg = 0;
  double response_time_ms = 0;

  bool valid = true;  // false when no sample of the trial is valid
  bool fixations_valid = false;
  bool saccades_valid = false;
  bool pupil_valid = false;

  std::optional<ContextFeatures> context;

  static constexpr std::size_t kNumGazeFeatures = 10;
  static const std::array<std::string_view, kNumGazeFeatures>& GazeNames();
  std::array<double, kNumGazeFeatures> GazeValues() const;

  // Looks a gaze feature up by its GazeNames() entry.
  std::optional<double> Get(std::string_view name) const;
};

// Runs DetectEvents and summarises the trial. Scanpath length is the summed
// distance between consecutive fixation centroids. Context is populated from
// `profile` when one is given.
FeatureVector ExtractFeatures(const ingest::Trial& trial,
                              const ingest::ScreenGeometry& g,
                              const DetectorParams& params = {},
                              const ingest::ParticipantProfile* profile = nullptr);

// Feature rows for every trial of `d`, in trial order.
std::vector<FeatureVector> ExtractAll(const ingest::Dataset& d,
                                      const DetectorParams& params = {},
                                      bool with_context = false);

// One row per trial: trial keys, gaze features, validity flags and, when
// present, context columns.
void WriteFeatureTable(const ingest::Dataset& d,
                       const std::vector<FeatureVector>& features,
                       std::ostream& out);

}  // namespace gazedp::events

#endif  // GAZEDP_EVENTS_FEATURES_H_

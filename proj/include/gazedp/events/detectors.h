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

#ifndef GAZEDP_EVENTS_DETECTORS_H_
#define GAZEDP_EVENTS_DETECTORS_H_

#include <span>
#include <vector>

#include "gazedp/ingest/dataset.h"

namespace gazedp::events {

struct Fixation {
  double onset_ms = 0;
  double offset_ms = 0;
  double centroid_x_px = 0;
  double centroid_y_px = 0;
  double dispersion_deg = 0;
  double mean_pupil = 0;  // 0 when no sample carried a pupil value

  double duration_ms() const { return offset_ms - onset_ms; }
};

struct Saccade {
  double onset_ms = 0;
  double offset_ms = 0;
  double amplitude_deg = 0;
  double peak_velocity_deg_s = 0;
};

// Dispersion-threshold (I-DT) parameters. The duration window brackets the
// typical 100-400 ms fixation range.
struct FixationParams {
  double dispersion_deg = 1.0;
  double min_duration_ms = 100;
  double max_duration_ms = 400;
};

// Velocity-threshold (I-VT) parameters.
struct SaccadeParams {
  double velocity_threshold_deg_s = 30;
};

struct DetectorParams {
  FixationParams fixation;
  SaccadeParams saccade;
};

// I-DT over valid samples. Dispersion is (x range) + (y range) in degrees.
// A window never spans an invalid sample or a timing gap; runs longer than
// max_duration_ms are cut into consecutive fixations. An event lasts from
// its first sample to one sample interval after its last.
//
// Throws ArgumentError if timestamps decrease or thresholds are not
// positive with min_duration_ms < max_duration_ms.
std::vector<Fixation> DetectFixations(std::span<const ingest::GazeSample> samples,
                                      const ingest::ScreenGeometry& g,
                                      const FixationParams& params = {});

// I-VT on central-difference velocity. Each run of samples above threshold
// is one saccade; amplitude is the straight-line distance between the
// run's first and last sample. Fewer than 3 valid samples yield nothing.
std::vector<Saccade> DetectSaccades(std::span<const ingest::GazeSample> samples,
                                    const ingest::ScreenGeometry& g,
                                    const SaccadeParams& params = {});

struct Events {
  std::vector<Fixation> fixations;
  std::vector<Saccade> saccades;
};

// Both detectors on one trace, with saccadic samples withheld from fixation
// grouping so that the two event lists never overlap in time.
Events DetectEvents(std::span<const ingest::GazeSample> samples,
                    const ingest::ScreenGeometry& g,
                    const DetectorParams& params = {});

}  // namespace gazedp::events

#endif  // GAZEDP_EVENTS_DETECTORS_H_

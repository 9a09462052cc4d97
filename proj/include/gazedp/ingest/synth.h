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

#ifndef GAZEDP_INGEST_SYNTH_H_
#define GAZEDP_INGEST_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gazedp/common/seed.h"
#include "gazedp/ingest/dataset.h"
#include "json.hpp"

namespace gazedp::ingest {

// Categorical distributions over ratings 1..L. `per_attribute` overrides
// `fallback`; an empty fallback means uniform.
struct RatingDistribution {
  std::vector<double> fallback;
  std::map<std::string, std::vector<double>> per_attribute;

  // Probabilities for `attribute`, length `levels`.
  std::vector<double> For(const std::string& attribute, int levels) const;

  bool operator==(const RatingDistribution&) const = default;
};

// Parameters of the synthetic gaze and privacy-rating dataset generator.
struct SynthSpec {
  int n_participants = 20;
  int n_trials_per_participant = 50;
  RatingDistribution rating_distribution;
  // 0: gaze is independent of rating, participant and expertise.
  // 1: full effect sizes.
  double signal_strength = 1.0;
  uint64_t seed = 1;

  int levels = kDefaultLevels;
  double sample_rate_hz = 250;
  double mean_viewing_ms = 3000;
  double expert_fraction = 0.12;
  double search_fraction = 0.0;  // share of trials recorded in the search task
  ScreenGeometry geometry;       // sample_rate_hz is taken from the field above

  bool operator==(const SynthSpec&) const = default;
};

// Rating distribution skewed toward the private end of the scale: most
// attributes lean private, a few lean safe.
RatingDistribution SkewedRatingDistribution();

SynthSpec DefaultSkewedSpec();

// Throws ArgumentError describing the first broken SynthSpec invariant.
void CheckSynthSpec(const SynthSpec& spec);

// Deterministic in `spec`. Throws ArgumentError on an invalid spec.
Dataset SynthesizeDataset(const SynthSpec& spec);

// JSON mirror of SynthSpec using the same field names. Missing fields keep
// their defaults; `rating_distribution` is either one array or an object of
// per-attribute arrays with optional key "default".
SynthSpec SynthSpecFromJson(const nlohmann::json& j);
nlohmann::json SynthSpecToJson(const SynthSpec& spec);

// ---- trace generator -------------------------------------------------------

struct TraceParams {
  double duration_ms = 3000;
  double sample_rate_hz = 250;
  double fixation_median_ms = 220;
  double fixation_sigma = 0.3;  // lognormal shape
  double amplitude_median_deg = 5;
  double amplitude_sigma = 0.35;
  double pupil_mean = 1000;
  double blink_probability = 0.05;  // per fixation
};

struct PlantedFixation {
  double onset_ms;
  double offset_ms;
  double x_px;
  double y_px;
};

struct PlantedSaccade {
  double onset_ms;
  double offset_ms;
  double amplitude_deg;
};

struct SyntheticTrace {
  std::vector<GazeSample> samples;
  std::vector<PlantedFixation> fixations;
  std::vector<PlantedSaccade> saccades;
};

// Alternating fixations (drift plus jitter, 120-380 ms) and main-sequence
// saccades with a raised-cosine velocity profile, with occasional blinks
// flagged invalid between them. The trace always ends on a complete
// fixation, so it may be shorter than duration_ms.
SyntheticTrace GenerateTrace(const TraceParams& params,
                             const ScreenGeometry& geometry, Rng& rng);

}  // namespace gazedp::ingest

#endif  // GAZEDP_INGEST_SYNTH_H_

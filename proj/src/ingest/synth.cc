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

#include "gazedp/ingest/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "gazedp/common/errors.h"
#include "gazedp/events/geometry.h"

namespace gazedp::ingest {
namespace {

constexpr std::array<const char*, 25> kNationalities = {
    "DE", "EG", "IN", "CN", "US", "FR", "IT", "ES", "TR", "IR",
    "PK", "BR", "MX", "GR", "PL", "RU", "NG", "VN", "ID", "KR",
    "JP", "SY", "NL", "AT", "CH",
};

std::vector<double> Uniform(int levels) {
  return std::vector<double>(static_cast<std::size_t>(levels), 1.0 / levels);
}

void CheckDistribution(const std::vector<double>& p, int levels,
                       const std::string& what) {
  if (static_cast<int>(p.size()) != levels) {
    throw ArgumentError("rating_distribution[" + what + "] must have " +
                        std::to_string(levels) + " entries");
  }
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw ArgumentError("rating_distribution[" + what +
                          "] has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("rating_distribution[" + what + "] sums to " +
                        std::to_string(sum) + ", not 1");
  }
}

int SampleCategorical(const std::vector<double>& p, Rng& rng) {
  const double u = UniformUnit(rng);
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  // u landed in the rounding slack above the last cumulative sum.
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0) return static_cast<int>(i);
  }
  return 0;
}

struct ParticipantTraits {
  double view = 0;
  double duration = 0;
  double amplitude = 0;
  double pupil = 0;
};

}  // namespace

std::vector<double> RatingDistribution::For(const std::string& attribute,
                                            int levels) const {
  if (auto it = per_attribute.find(attribute); it != per_attribute.end()) {
    return it->second;
  }
  return fallback.empty() ? Uniform(levels) : fallback;
}

RatingDistribution SkewedRatingDistribution() {
  const std::vector<double> priv = {0.35, 0.25, 0.15, 0.10, 0.07, 0.05, 0.03};
  const std::vector<double> mixed = {0.15, 0.15, 0.20, 0.20, 0.12, 0.10, 0.08};
  const std::vector<double> safe = {0.05, 0.05, 0.10, 0.15, 0.20, 0.20, 0.25};
  RatingDistribution d;
  d.fallback = {0.25, 0.20, 0.15, 0.12, 0.10, 0.09, 0.09};
  for (const char* a : {"credit_card", "fingerprint", "medical_history",
                        "signature", "full_name", "home_address",
                        "sexual_orientation", "email_content"}) {
    d.per_attribute[a] = priv;
  }
  for (const char* a : {"political_opinion", "religion", "medical_treatment",
                        "face_complete", "license_plate_complete", "mail",
                        "receipts", "tickets", "personal_relationship"}) {
    d.per_attribute[a] = mixed;
  }
  for (const char* a : {"occupation", "personal_occasion", "visited_location"}) {
    d.per_attribute[a] = safe;
  }
  return d;
}

SynthSpec DefaultSkewedSpec() {
  SynthSpec spec;
  spec.rating_distribution = SkewedRatingDistribution();
  return spec;
}

void CheckSynthSpec(const SynthSpec& spec) {
  if (spec.n_participants <= 0) {
    throw ArgumentError("n_participants must be positive");
  }
  if (spec.n_trials_per_participant <= 0) {
    throw ArgumentError("n_trials_per_participant must be positive");
  }
  if (spec.levels < 2) throw ArgumentError("levels must be >= 2");
  if (!(spec.signal_strength >= 0 && spec.signal_strength <= 1)) {
    throw ArgumentError("signal_strength must lie in [0, 1]");
  }
  if (!(spec.sample_rate_hz >= 1)) {
    throw ArgumentError("sample_rate_hz must be >= 1");
  }
  if (!(spec.mean_viewing_ms >= 500)) {
    throw ArgumentError("mean_viewing_ms must be >= 500");
  }
  if (!(spec.expert_fraction >= 0 && spec.expert_fraction <= 1)) {
    throw ArgumentError("expert_fraction must lie in [0, 1]");
  }
  if (!(spec.search_fraction >= 0 && spec.search_fraction <= 1)) {
    throw ArgumentError("search_fraction must lie in [0, 1]");
  }
  if (!spec.rating_distribution.fallback.empty()) {
    CheckDistribution(spec.rating_distribution.fallback, spec.levels,
                      "default");
  }
  for (const auto& [attr, p] : spec.rating_distribution.per_attribute) {
    if (FindAttribute(attr) == nullptr) {
      throw ArgumentError("rating_distribution: unknown attribute '" + attr +
                          "'");
    }
    CheckDistribution(p, spec.levels, attr);
  }
}

SyntheticTrace GenerateTrace(const TraceParams& params,
                             const ScreenGeometry& geometry, Rng& rng) {
  const events::PixelsPerDegree ppd = events::PxPerDegree(geometry);
  const double dt_ms = 1000.0 / params.sample_rate_hz;
  // White positional noise scaled so the central-difference velocity noise
  // stays near 1.8 deg/s at every sampling rate.
  const double jitter_deg = 2.5 / params.sample_rate_hz;
  std::normal_distribution<double> normal(0.0, 1.0);

  SyntheticTrace trace;
  int64_t sample_index = 0;
  auto now_ms = [&] { return static_cast<double>(sample_index) * dt_ms; };
  auto emit = [&](double x, double y, std::optional<double> pupil,
                  bool valid) {
    GazeSample s;
    s.t_us = std::llround(now_ms() * 1000.0);
    s.x_px = x;
    s.y_px = y;
    s.pupil = pupil;
    s.valid = valid;
    trace.samples.push_back(s);
    ++sample_index;
  };

  const double margin = 60;
  double x = geometry.width_px * (0.35 + 0.3 * UniformUnit(rng));
  double y = geometry.height_px * (0.35 + 0.3 * UniformUnit(rng));
  double pupil_level = params.pupil_mean;

  while (true) {
    const double dur = std::clamp(
        params.fixation_median_ms * std::exp(params.fixation_sigma * normal(rng)),
        120.0, 380.0);
    if (now_ms() + dur > params.duration_ms && !trace.fixations.empty()) break;

    // Fixation: slow linear drift plus white jitter.
    const double drift_deg = 0.1 * UniformUnit(rng);
    const double drift_dir = 2 * std::numbers::pi * UniformUnit(rng);
    const double dx = drift_deg * std::cos(drift_dir) * ppd.horizontal;
    const double dy = drift_deg * std::sin(drift_dir) * ppd.vertical;
    pupil_level = params.pupil_mean * (1 + 0.05 * normal(rng));
    const double onset = now_ms();
    const int64_t n = std::max<int64_t>(1, std::llround(dur / dt_ms));
    for (int64_t i = 0; i < n; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(n);
      emit(x + frac * dx + jitter_deg * ppd.horizontal * normal(rng),
           y + frac * dy + jitter_deg * ppd.vertical * normal(rng),
           pupil_level * (1 + 0.01 * normal(rng)), true);
    }
    x += dx;
    y += dy;
    trace.fixations.push_back({onset, now_ms(), x - 0.5 * dx, y - 0.5 * dy});

    if (UniformUnit(rng) < params.blink_probability) {
      const int64_t blink = std::llround((80 + 70 * UniformUnit(rng)) / dt_ms);
      for (int64_t i = 0; i < blink; ++i) emit(x, y, std::nullopt, false);
    }

    // Saccade towards an on-screen target.
    const double amp = std::clamp(
        params.amplitude_median_deg *
            std::exp(params.amplitude_sigma * normal(rng)),
        2.0, 15.0);
    double tx = x, ty = y;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const double dir = 2 * std::numbers::pi * UniformUnit(rng);
      tx = x + amp * std::cos(dir) * ppd.horizontal;
      ty = y + amp * std::sin(dir) * ppd.vertical;
      if (tx > margin && tx < geometry.width_px - margin && ty > margin &&
          ty < geometry.height_px - margin) {
        break;
      }
      // Fall back to heading for the screen centre.
      const double cx = geometry.width_px / 2 - x;
      const double cy = geometry.height_px / 2 - y;
      const double len = std::hypot(cx / ppd.horizontal, cy / ppd.vertical);
      if (len > 0) {
        tx = x + amp * cx / len;
        ty = y + amp * cy / len;
      }
    }
    const double sac_ms = 21 + 2.2 * amp;
    const double s_onset = now_ms();
    const int64_t m = std::max<int64_t>(2, std::llround(sac_ms / dt_ms));
    for (int64_t i = 0; i < m; ++i) {
      const double tau = static_cast<double>(i) / static_cast<double>(m);
      const double shape = tau - std::sin(2 * std::numbers::pi * tau) /
                                     (2 * std::numbers::pi);
      emit(x + shape * (tx - x), y + shape * (ty - y),
           pupil_level * (1 + 0.01 * normal(rng)), true);
    }
    const double actual_amp =
        std::hypot((tx - x) / ppd.horizontal, (ty - y) / ppd.vertical);
    trace.saccades.push_back({s_onset, now_ms(), actual_amp});
    x = tx;
    y = ty;
  }
  // The last saccade leads nowhere; drop it together with its samples.
  if (!trace.saccades.empty() &&
      trace.saccades.back().onset_ms >= trace.fixations.back().offset_ms) {
    const double cut = trace.saccades.back().onset_ms;
    trace.saccades.pop_back();
    while (!trace.samples.empty() &&
           static_cast<double>(trace.samples.back().t_us) / 1000.0 >=
               cut - 1e-6) {
      trace.samples.pop_back();
    }
    // Trailing blink samples after the final fixation go as well.
    while (!trace.samples.empty() && !trace.samples.back().valid) {
      trace.samples.pop_back();
    }
  }
  return trace;
}

Dataset SynthesizeDataset(const SynthSpec& spec) {
  CheckSynthSpec(spec);
  const double s = spec.signal_strength;

  Dataset d;
  d.geometry = spec.geometry;
  d.geometry.sample_rate_hz = spec.sample_rate_hz;
  d.levels = spec.levels;

  Rng meta_rng = MakeRng(DeriveSeed(spec.seed, "participants"));
  const int n = spec.n_participants;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), meta_rng);
  const int n_experts =
      static_cast<int>(std::lround(spec.expert_fraction * n));
  std::vector<bool> expert(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n_experts; ++i) expert[order[i]] = true;

  std::normal_distribution<double> normal(0.0, 1.0);
  const double mid = 0.5 * (spec.levels + 1);

  for (int p = 0; p < n; ++p) {
    Rng prng = MakeRng(DeriveSeed(spec.seed, static_cast<uint64_t>(p)));
    char id[16];
    std::snprintf(id, sizeof(id), "P%03d", p + 1);
    ParticipantProfile profile;
    profile.participant_id = id;
    profile.age_years = 18 + static_cast<int>(UniformUnit(prng) * 18);
    profile.gender = UniformUnit(prng) < 0.37 ? "female" : "male";
    profile.nationality =
        kNationalities[static_cast<std::size_t>(UniformUnit(prng) *
                                                kNationalities.size())];
    profile.privacy_expert = expert[static_cast<std::size_t>(p)];
    d.profiles.push_back(profile);

    ParticipantTraits traits{normal(prng), normal(prng), normal(prng),
                             normal(prng)};
    const double ex = profile.privacy_expert ? 1.0 : 0.0;
    const int block = p % 4 + 1;
    const std::vector<const AttributeInfo*> attrs = AttributesInBlock(block);

    for (int j = 0; j < spec.n_trials_per_participant; ++j) {
      Rng trng = MakeRng(DeriveSeed(DeriveSeed(spec.seed, "trial"),
                                    static_cast<uint64_t>(p) * 1000003ULL +
                                        static_cast<uint64_t>(j)));
      const AttributeInfo* attr =
          attrs[static_cast<std::size_t>(j) % attrs.size()];
      Trial t;
      t.participant_id = profile.participant_id;
      t.block = block;
      t.task_kind = UniformUnit(trng) < spec.search_fraction
                        ? TaskKind::kSearch
                        : TaskKind::kFreeView;
      t.attribute = std::string(attr->name);
      t.category = attr->category;
      t.stimulus_id = "b" + std::to_string(block) + "_" + t.attribute + "_" +
                      std::to_string(j / static_cast<int>(attrs.size()) + 1);
      t.rating_l = 1 + SampleCategorical(
                           spec.rating_distribution.For(t.attribute,
                                                        spec.levels),
                           trng);

      // +1 for the most private rating, -1 for the safest.
      const double r = (mid - t.rating_l) / (mid - 1);
      TraceParams tp;
      tp.sample_rate_hz = spec.sample_rate_hz;
      tp.duration_ms = spec.mean_viewing_ms *
                       std::exp(s * (0.25 * r + 0.15 * traits.view - 0.2 * ex) +
                                0.15 * normal(trng));
      tp.fixation_median_ms =
          220 * std::exp(s * (0.25 * r + 0.15 * traits.duration - 0.15 * ex));
      tp.amplitude_median_deg =
          5 * std::exp(s * (0.2 * traits.amplitude + 0.15 * ex - 0.1 * r));
      tp.pupil_mean = 1000 * std::exp(s * (0.06 * r + 0.1 * traits.pupil) +
                                      0.03 * normal(trng));
      SyntheticTrace trace = GenerateTrace(tp, d.geometry, trng);
      t.samples = std::move(trace.samples);
      const double viewed_ms =
          static_cast<double>(t.samples.back().t_us) / 1000.0;
      t.response_time_ms = std::round(
          viewed_ms + 800 * std::exp(s * (0.3 * r - 0.2 * ex) +
                                     0.3 * normal(trng)));
      d.trials.push_back(std::move(t));
    }
  }
  return d;
}

SynthSpec SynthSpecFromJson(const nlohmann::json& j) {
  SynthSpec spec;
  if (!j.is_object()) throw ArgumentError("synth config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "n_participants") {
      spec.n_participants = value.get<int>();
    } else if (key == "n_trials_per_participant") {
      spec.n_trials_per_participant = value.get<int>();
    } else if (key == "signal_strength") {
      spec.signal_strength = value.get<double>();
    } else if (key == "seed") {
      spec.seed = value.get<uint64_t>();
    } else if (key == "levels") {
      spec.levels = value.get<int>();
    } else if (key == "sample_rate_hz") {
      spec.sample_rate_hz = value.get<double>();
    } else if (key == "mean_viewing_ms") {
      spec.mean_viewing_ms = value.get<double>();
    } else if (key == "expert_fraction") {
      spec.expert_fraction = value.get<double>();
    } else if (key == "search_fraction") {
      spec.search_fraction = value.get<double>();
    } else if (key == "rating_distribution") {
      if (value.is_string() && value.get<std::string>() == "skewed") {
        spec.rating_distribution = SkewedRatingDistribution();
      } else if (value.is_string() && value.get<std::string>() == "uniform") {
        spec.rating_distribution = {};
      } else if (value.is_array()) {
        spec.rating_distribution.fallback = value.get<std::vector<double>>();
      } else if (value.is_object()) {
        for (const auto& [attr, p] : value.items()) {
          if (attr == "default") {
            spec.rating_distribution.fallback = p.get<std::vector<double>>();
          } else {
            spec.rating_distribution.per_attribute[attr] =
                p.get<std::vector<double>>();
          }
        }
      } else {
        throw ArgumentError(
            "rating_distribution must be \"skewed\", \"uniform\", an array or "
            "an object");
      }
    } else if (key == "geometry") {
      ScreenGeometry& g = spec.geometry;
      g.width_px = value.value("width_px", g.width_px);
      g.height_px = value.value("height_px", g.height_px);
      g.width_mm = value.value("width_mm", g.width_mm);
      g.height_mm = value.value("height_mm", g.height_mm);
      g.eye_distance_mm = value.value("eye_distance_mm", g.eye_distance_mm);
    } else {
      throw ArgumentError("unknown synth config field '" + key + "'");
    }
  }
  CheckSynthSpec(spec);
  return spec;
}

nlohmann::json SynthSpecToJson(const SynthSpec& spec) {
  nlohmann::json dist = nlohmann::json::object();
  if (!spec.rating_distribution.fallback.empty()) {
    dist["default"] = spec.rating_distribution.fallback;
  }
  for (const auto& [attr, p] : spec.rating_distribution.per_attribute) {
    dist[attr] = p;
  }
  const ScreenGeometry& g = spec.geometry;
  return {
      {"n_participants", spec.n_participants},
      {"n_trials_per_participant", spec.n_trials_per_participant},
      {"rating_distribution", dist},
      {"signal_strength", spec.signal_strength},
      {"seed", spec.seed},
      {"levels", spec.levels},
      {"sample_rate_hz", spec.sample_rate_hz},
      {"mean_viewing_ms", spec.mean_viewing_ms},
      {"expert_fraction", spec.expert_fraction},
      {"search_fraction", spec.search_fraction},
      {"geometry",
       {{"width_px", g.width_px},
        {"height_px", g.height_px},
        {"width_mm", g.width_mm},
        {"height_mm", g.height_mm},
        {"eye_distance_mm", g.eye_distance_mm}}},
  };
}

}  // namespace gazedp::ingest

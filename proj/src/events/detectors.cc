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

#include "gazedp/events/detectors.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gazedp/common/errors.h"
#include "gazedp/events/geometry.h"

namespace gazedp::events {
namespace {

using ingest::GazeSample;

double Ms(const GazeSample& s) { return static_cast<double>(s.t_us) / 1000.0; }

void CheckOrdered(std::span<const GazeSample> samples) {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t_us < samples[i - 1].t_us) {
      throw ArgumentError("event detection: timestamps are not ordered");
    }
  }
}

// Nominal sample interval: median spacing of consecutive valid samples,
// falling back to the recording rate.
double SampleIntervalMs(std::span<const GazeSample> samples,
                        const ingest::ScreenGeometry& g) {
  std::vector<int64_t> diffs;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].valid && samples[i - 1].valid &&
        samples[i].t_us > samples[i - 1].t_us) {
      diffs.push_back(samples[i].t_us - samples[i - 1].t_us);
    }
  }
  if (diffs.empty()) return 1000.0 / g.sample_rate_hz;
  auto mid = diffs.begin() + static_cast<std::ptrdiff_t>(diffs.size() / 2);
  std::nth_element(diffs.begin(), mid, diffs.end());
  return static_cast<double>(*mid) / 1000.0;
}

// Maximal runs [begin, end) of usable samples without timing gaps.
struct Segment {
  std::size_t begin;
  std::size_t end;
};

std::vector<Segment> Segments(std::span<const GazeSample> samples,
                              const std::vector<bool>& usable, double dt_ms) {
  std::vector<Segment> out;
  const double max_gap_ms = 2.5 * dt_ms;
  std::size_t i = 0;
  while (i < samples.size()) {
    if (!usable[i]) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < samples.size() && usable[j] &&
           Ms(samples[j]) - Ms(samples[j - 1]) <= max_gap_ms) {
      ++j;
    }
    out.push_back({i, j});
    i = j;
  }
  return out;
}

// End of the event whose last sample is `last`: one interval later, but
// never past the next sample.
double EventOffset(std::span<const GazeSample> samples, std::size_t last,
                   double dt_ms) {
  double offset = Ms(samples[last]) + dt_ms;
  if (last + 1 < samples.size()) offset = std::min(offset, Ms(samples[last + 1]));
  return offset;
}

double DistanceDeg(const GazeSample& a, const GazeSample& b,
                   const PixelsPerDegree& ppd) {
  return std::hypot((a.x_px - b.x_px) / ppd.horizontal,
                    (a.y_px - b.y_px) / ppd.vertical);
}

struct Bounds {
  double min_x, max_x, min_y, max_y;

  explicit Bounds(const GazeSample& s)
      : min_x(s.x_px), max_x(s.x_px), min_y(s.y_px), max_y(s.y_px) {}

  void Add(const GazeSample& s) {
    min_x = std::min(min_x, s.x_px);
    max_x = std::max(max_x, s.x_px);
    min_y = std::min(min_y, s.y_px);
    max_y = std::max(max_y, s.y_px);
  }

  double DispersionDeg(const PixelsPerDegree& ppd) const {
    return (max_x - min_x) / ppd.horizontal + (max_y - min_y) / ppd.vertical;
  }
};

void RunIdt(std::span<const GazeSample> samples, const Segment& seg,
            const PixelsPerDegree& ppd, double dt_ms,
            const FixationParams& params, std::vector<Fixation>& out) {
  constexpr double kEps = 1e-9;
  auto duration = [&](std::size_t i, std::size_t j) {
    return Ms(samples[j]) - Ms(samples[i]) + dt_ms;
  };
  std::size_t i = seg.begin;
  while (i < seg.end) {
    std::size_t j = i;
    while (j < seg.end && duration(i, j) < params.min_duration_ms - kEps) ++j;
    if (j >= seg.end) break;
    Bounds b(samples[i]);
    for (std::size_t k = i + 1; k <= j; ++k) b.Add(samples[k]);
    if (b.DispersionDeg(ppd) > params.dispersion_deg ||
        duration(i, j) > params.max_duration_ms + kEps) {
      ++i;
      continue;
    }
    while (j + 1 < seg.end &&
           duration(i, j + 1) <= params.max_duration_ms + kEps) {
      Bounds grown = b;
      grown.Add(samples[j + 1]);
      if (grown.DispersionDeg(ppd) > params.dispersion_deg) break;
      b = grown;
      ++j;
    }
    Fixation f;
    f.onset_ms = Ms(samples[i]);
    f.offset_ms = EventOffset(samples, j, dt_ms);
    double sx = 0, sy = 0, sp = 0;
    int np = 0;
    for (std::size_t k = i; k <= j; ++k) {
      sx += samples[k].x_px;
      sy += samples[k].y_px;
      if (samples[k].pupil) {
        sp += *samples[k].pupil;
        ++np;
      }
    }
    const double n = static_cast<double>(j - i + 1);
    f.centroid_x_px = sx / n;
    f.centroid_y_px = sy / n;
    f.dispersion_deg = b.DispersionDeg(ppd);
    f.mean_pupil = np > 0 ? sp / np : 0.0;
    out.push_back(f);
    i = j + 1;
  }
}

// Central-difference velocity per sample; empty where undefined.
std::vector<std::optional<double>> Velocities(
    std::span<const GazeSample> samples, const std::vector<Segment>& segments,
    const PixelsPerDegree& ppd) {
  std::vector<std::optional<double>> v(samples.size());
  for (const Segment& seg : segments) {
    for (std::size_t i = seg.begin + 1; i + 1 < seg.end; ++i) {
      const double span_s =
          static_cast<double>(samples[i + 1].t_us - samples[i - 1].t_us) / 1e6;
      if (span_s <= 0) continue;
      v[i] = DistanceDeg(samples[i + 1], samples[i - 1], ppd) / span_s;
    }
  }
  return v;
}

std::vector<bool> ValidMask(std::span<const GazeSample> samples) {
  std::vector<bool> mask(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mask[i] = samples[i].valid;
  return mask;
}

void CheckFixationParams(const FixationParams& p) {
  if (!(p.dispersion_deg > 0) || !(p.min_duration_ms > 0) ||
      !(p.max_duration_ms > p.min_duration_ms)) {
    throw ArgumentError(
        "fixation detection: thresholds must be positive with "
        "min_duration_ms < max_duration_ms");
  }
}

std::vector<Fixation> FixationsOnMask(std::span<const GazeSample> samples,
                                      const ingest::ScreenGeometry& g,
                                      const FixationParams& params,
                                      const std::vector<bool>& usable,
                                      double dt_ms) {
  const PixelsPerDegree ppd = PxPerDegree(g);
  std::vector<Fixation> out;
  for (const Segment& seg : Segments(samples, usable, dt_ms)) {
    RunIdt(samples, seg, ppd, dt_ms, params, out);
  }
  return out;
}

// Returns saccades and marks their samples in `saccadic`.
std::vector<Saccade> SaccadesWithMask(std::span<const GazeSample> samples,
                                      const ingest::ScreenGeometry& g,
                                      const SaccadeParams& params,
                                      double dt_ms,
                                      std::vector<bool>& saccadic) {
  if (!(params.velocity_threshold_deg_s > 0)) {
    throw ArgumentError("saccade detection: threshold must be positive");
  }
  saccadic.assign(samples.size(), false);
  std::vector<Saccade> out;
  const std::size_t n_valid = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(),
                    [](const GazeSample& s) { return s.valid; }));
  if (n_valid < 3) return out;

  const PixelsPerDegree ppd = PxPerDegree(g);
  const std::vector<Segment> segments =
      Segments(samples, ValidMask(samples), dt_ms);
  const std::vector<std::optional<double>> v =
      Velocities(samples, segments, ppd);
  auto fast = [&](std::size_t i) {
    return v[i] && *v[i] > params.velocity_threshold_deg_s;
  };
  std::size_t i = 0;
  while (i < samples.size()) {
    if (!fast(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    double peak = *v[i];
    while (j + 1 < samples.size() && fast(j + 1)) {
      ++j;
      peak = std::max(peak, *v[j]);
    }
    Saccade s;
    s.onset_ms = Ms(samples[i]);
    s.offset_ms = EventOffset(samples, j, dt_ms);
    s.amplitude_deg = DistanceDeg(samples[i], samples[j], ppd);
    s.peak_velocity_deg_s = peak;
    out.push_back(s);
    for (std::size_t k = i; k <= j; ++k) saccadic[k] = true;
    i = j + 1;
  }
  return out;
}

}  // namespace

std::vector<Fixation> DetectFixations(std::span<const GazeSample> samples,
                                      const ingest::ScreenGeometry& g,
                                      const FixationParams& params) {
  CheckFixationParams(params);
  CheckOrdered(samples);
  if (samples.empty()) return {};
  return FixationsOnMask(samples, g, params, ValidMask(samples),
                         SampleIntervalMs(samples, g));
}

std::vector<Saccade> DetectSaccades(std::span<const GazeSample> samples,
                                    const ingest::ScreenGeometry& g,
                                    const SaccadeParams& params) {
  CheckOrdered(samples);
  std::vector<bool> saccadic;
  return SaccadesWithMask(samples, g, params, SampleIntervalMs(samples, g),
                          saccadic);
}

Events DetectEvents(std::span<const GazeSample> samples,
                    const ingest::ScreenGeometry& g,
                    const DetectorParams& params) {
  CheckFixationParams(params.fixation);
  CheckOrdered(samples);
  Events events;
  if (samples.empty()) return events;
  const double dt_ms = SampleIntervalMs(samples, g);
  std::vector<bool> saccadic;
  events.saccades =
      SaccadesWithMask(samples, g, params.saccade, dt_ms, saccadic);
  std::vector<bool> usable = ValidMask(samples);
  for (std::size_t i = 0; i < usable.size(); ++i) {
    if (saccadic[i]) usable[i] = false;
  }
  events.fixations = FixationsOnMask(samples, g, params.fixation, usable, dt_ms);
  return events;
}

}  // namespace gazedp::events

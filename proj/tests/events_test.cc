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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/events/detectors.h"
#include "gazedp/events/features.h"
#include "gazedp/events/geometry.h"
#include "gazedp/ingest/synth.h"

namespace gazedp::events {
namespace {

using ingest::GazeSample;
using ingest::ScreenGeometry;

// Samples at `rate_hz` for `ms` milliseconds, position given in degrees
// from the screen centre as a function of time.
std::vector<GazeSample> Trace(double rate_hz, double ms,
                              const std::function<std::pair<double, double>(double)>& deg,
                              const ScreenGeometry& g = {}) {
  const PixelsPerDegree ppd = PxPerDegree(g);
  std::vector<GazeSample> out;
  const int n = static_cast<int>(std::lround(ms * rate_hz / 1000));
  for (int i = 0; i < n; ++i) {
    const double t_ms = i * 1000.0 / rate_hz;
    const auto [dx, dy] = deg(t_ms);
    GazeSample s;
    s.t_us = std::llround(t_ms * 1000);
    s.x_px = g.width_px / 2 + dx * ppd.horizontal;
    s.y_px = g.height_px / 2 + dy * ppd.vertical;
    s.pupil = 500;
    out.push_back(s);
  }
  return out;
}

std::pair<double, double> Still(double) { return {0, 0}; }

TEST(GeometryTest, ReferenceScreenPixelsPerDegree) {
  const PixelsPerDegree ppd = PxPerDegree(ScreenGeometry{});
  // Hand evaluation: 2 * 700 * tan(0.5 deg) * 1920 / 545 and * 1080 / 303.
  const double t = std::tan(0.5 * std::numbers::pi / 180);
  EXPECT_NEAR(ppd.horizontal, 1400 * t * 1920 / 545, 1e-12);
  EXPECT_NEAR(ppd.horizontal, 43.04, 0.01);
  EXPECT_NEAR(ppd.vertical, 43.55, 0.01);
}

TEST(GeometryTest, DoublingDistanceDoublesResolution) {
  ScreenGeometry g;
  const double base = PxPerDegree(g).horizontal;
  g.eye_distance_mm *= 2;
  EXPECT_NEAR(PxPerDegree(g).horizontal / base, 2.0, 2e-3);
}

TEST(FixationTest, ConstantPointIsOneFixation) {
  const auto samples = Trace(2000, 150, Still);
  ASSERT_EQ(samples.size(), 300u);
  const auto fix = DetectFixations(samples, ScreenGeometry{});
  ASSERT_EQ(fix.size(), 1u);
  EXPECT_NEAR(fix[0].duration_ms(), 150, 1e-9);
  EXPECT_DOUBLE_EQ(fix[0].dispersion_deg, 0);
  EXPECT_DOUBLE_EQ(fix[0].mean_pupil, 500);
}

TEST(FixationTest, TwoClustersTenDegreesApart) {
  const auto samples = Trace(2000, 430, [](double t) {
    if (t < 200) return std::pair{-5.0, 0.0};
    if (t < 230) return std::pair{-5.0 + 10 * (t - 200) / 30, 0.0};
    return std::pair{5.0, 0.0};
  });
  const auto fix = DetectFixations(samples, ScreenGeometry{});
  ASSERT_EQ(fix.size(), 2u);
  // The window may absorb up to 1 deg of the 10 deg / 30 ms ramp (3 ms)
  // plus one sample period.
  for (const Fixation& f : fix) {
    EXPECT_GE(f.duration_ms(), 200 - 1e-9);
    EXPECT_LE(f.duration_ms(), 200 + 3 + 0.5 + 1e-9);
  }
  EXPECT_LE(fix[0].offset_ms, fix[1].onset_ms);
}

TEST(FixationTest, ShortDwellIsNotAFixation) {
  EXPECT_TRUE(DetectFixations(Trace(2000, 50, Still), ScreenGeometry{}).empty());
}

TEST(FixationTest, LongRunsSplitAtMaximumDuration) {
  const auto fix = DetectFixations(Trace(1000, 1000, Still), ScreenGeometry{});
  ASSERT_EQ(fix.size(), 3u);
  EXPECT_NEAR(fix[0].duration_ms(), 400, 1e-9);
  EXPECT_NEAR(fix[1].duration_ms(), 400, 1e-9);
  EXPECT_NEAR(fix[2].duration_ms(), 200, 1e-9);
  EXPECT_DOUBLE_EQ(fix[0].offset_ms, fix[1].onset_ms);
}

TEST(FixationTest, EmptyAndUnorderedInputs) {
  EXPECT_TRUE(DetectFixations({}, ScreenGeometry{}).empty());
  auto samples = Trace(1000, 200, Still);
  std::swap(samples[10], samples[11]);
  EXPECT_THROW(DetectFixations(samples, ScreenGeometry{}), ArgumentError);
}

TEST(SaccadeTest, StationaryTraceHasNone) {
  EXPECT_TRUE(DetectSaccades(Trace(1000, 500, Still), ScreenGeometry{}).empty());
}

TEST(SaccadeTest, LinearSweepIsOneSaccade) {
  // 10 degrees in 40 ms is 250 deg/s.
  const auto samples = Trace(1000, 200, [](double t) {
    if (t < 80) return std::pair{-5.0, 0.0};
    if (t < 120) return std::pair{-5.0 + 10 * (t - 80) / 40, 0.0};
    return std::pair{5.0, 0.0};
  });
  const auto sac = DetectSaccades(samples, ScreenGeometry{});
  ASSERT_EQ(sac.size(), 1u);
  EXPECT_NEAR(sac[0].amplitude_deg, 10, 0.5);
  EXPECT_GE(sac[0].peak_velocity_deg_s, 250 * (1 - 1e-9));
  EXPECT_GT(sac[0].offset_ms, sac[0].onset_ms);
}

TEST(SaccadeTest, TooFewValidSamples) {
  auto samples = Trace(1000, 10, [](double t) { return std::pair{t, 0.0}; });
  for (std::size_t i = 2; i < samples.size(); ++i) samples[i].valid = false;
  EXPECT_TRUE(DetectSaccades(samples, ScreenGeometry{}).empty());
  EXPECT_THROW(DetectSaccades(samples, ScreenGeometry{}, {0}), ArgumentError);
}

ingest::Trial TrialOf(std::vector<GazeSample> samples) {
  ingest::Trial t;
  t.participant_id = "P001";
  t.attribute = "receipts";
  t.category = ingest::Category::kDocuments;
  t.rating_l = 2;
  t.response_time_ms = 1234;
  t.samples = std::move(samples);
  return t;
}

TEST(FeaturesTest, SingleFixationTrial) {
  const FeatureVector f = ExtractFeatures(TrialOf(Trace(1000, 250, Still)), ScreenGeometry{});
  EXPECT_TRUE(f.valid);
  EXPECT_EQ(f.fixation_count, 1);
  EXPECT_EQ(f.saccade_count, 0);
  EXPECT_TRUE(f.fixations_valid);
  EXPECT_FALSE(f.saccades_valid);
  EXPECT_DOUBLE_EQ(f.mean_amplitude_deg, 0);
  EXPECT_DOUBLE_EQ(f.pupil_mean, 500);
  EXPECT_DOUBLE_EQ(f.pupil_std, 0);
  EXPECT_DOUBLE_EQ(f.response_time_ms, 1234);
}

std::vector<GazeSample> PlantedTrace(uint64_t seed, ScreenGeometry* g_out = nullptr) {
  ScreenGeometry g;
  g.sample_rate_hz = 500;
  ingest::TraceParams params;
  params.sample_rate_hz = 500;
  params.blink_probability = 0.2;
  Rng rng = MakeRng(seed);
  if (g_out) *g_out = g;
  return ingest::GenerateTrace(params, g, rng).samples;
}

TEST(FeaturesTest, ConcatenationDoublesTotalFixation) {
  ScreenGeometry g;
  const auto one = PlantedTrace(21, &g);
  auto two = one;
  // A recording gap keeps the copies from fusing into one event.
  const int64_t shift = one.back().t_us + 100'000;
  for (GazeSample s : one) {
    s.t_us += shift;
    two.push_back(s);
  }
  const double single = ExtractFeatures(TrialOf(one), g).total_fixation_ms;
  const double doubled = ExtractFeatures(TrialOf(two), g).total_fixation_ms;
  ASSERT_GT(single, 0);
  EXPECT_NEAR(doubled, 2 * single, 1.0);
}

TEST(FeaturesTest, InvariantToTimeShift) {
  ScreenGeometry g;
  const auto base = PlantedTrace(22, &g);
  auto shifted = base;
  for (GazeSample& s : shifted) s.t_us += 7'000'000;
  const auto a = ExtractFeatures(TrialOf(base), g).GazeValues();
  const auto b = ExtractFeatures(TrialOf(shifted), g).GazeValues();
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-9 * std::max(1.0, std::abs(a[i])))
        << FeatureVector::GazeNames()[i];
  }
}

TEST(FeaturesTest, AllInvalidSamplesFlagTheVector) {
  auto samples = Trace(1000, 200, Still);
  for (GazeSample& s : samples) s.valid = false;
  const FeatureVector f = ExtractFeatures(TrialOf(samples), ScreenGeometry{});
  EXPECT_FALSE(f.valid);
  EXPECT_EQ(f.fixation_count, 0);
}

TEST(FeaturesTest, ContextComesFromProfile) {
  ingest::ParticipantProfile p;
  p.participant_id = "P001";
  p.age_years = 30;
  p.gender = "female";
  p.nationality = "DE";
  p.privacy_expert = true;
  const FeatureVector f =
      ExtractFeatures(TrialOf(Trace(1000, 250, Still)), ScreenGeometry{}, {}, &p);
  ASSERT_TRUE(f.context.has_value());
  EXPECT_EQ(f.context->age_years, 30);
  EXPECT_TRUE(f.context->privacy_expert);
  EXPECT_FALSE(
      ExtractFeatures(TrialOf(Trace(1000, 250, Still)), ScreenGeometry{}).context);
}

TEST(EventsPropertyTest, NoOverlapAndDurationBound) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ScreenGeometry g;
    const auto samples = PlantedTrace(100 + seed, &g);
    const Events ev = DetectEvents(samples, g);
    double total = 0;
    for (std::size_t i = 0; i < ev.fixations.size(); ++i) {
      const Fixation& f = ev.fixations[i];
      EXPECT_GT(f.offset_ms, f.onset_ms);
      EXPECT_GE(f.duration_ms(), 100 - 1e-9);
      EXPECT_LE(f.duration_ms(), 400 + 1e-9);
      EXPECT_LE(f.dispersion_deg, 1.0 + 1e-12);
      if (i > 0) EXPECT_LE(ev.fixations[i - 1].offset_ms, f.onset_ms);
      total += f.duration_ms();
      for (const Saccade& s : ev.saccades) {
        const bool disjoint = s.offset_ms <= f.onset_ms || s.onset_ms >= f.offset_ms;
        EXPECT_TRUE(disjoint) << "seed " << seed;
      }
    }
    for (const Saccade& s : ev.saccades) {
      EXPECT_GT(s.offset_ms, s.onset_ms);
      EXPECT_GE(s.amplitude_deg, 0);
      EXPECT_GE(s.peak_velocity_deg_s, 0);
    }
    const double trial_ms = (samples.back().t_us - samples.front().t_us) / 1000.0 +
                            1000.0 / g.sample_rate_hz;
    EXPECT_LE(total, trial_ms + 1e-9);
  }
}

}  // namespace
}  // namespace gazedp::events

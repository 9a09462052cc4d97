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

#include "gazedp/ingest/downsample.h"

#include <cmath>

#include "gazedp/common/errors.h"

namespace gazedp::ingest {

std::vector<GazeSample> Downsample(std::span<const GazeSample> samples,
                                   double target_hz) {
  if (!(target_hz > 0) || !std::isfinite(target_hz)) {
    throw ArgumentError("Downsample: target_hz must be positive");
  }
  std::vector<GazeSample> out;
  if (samples.empty()) return out;
  const double period_us = 1e6 / target_hz;
  constexpr double kToleranceUs = 1.0;

  out.push_back(samples.front());
  int64_t last = samples.front().t_us;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t_us < samples[i - 1].t_us) {
      throw ArgumentError("Downsample: samples are not timestamp-ordered");
    }
    if (static_cast<double>(samples[i].t_us - last) >=
        period_us - kToleranceUs) {
      out.push_back(samples[i]);
      last = samples[i].t_us;
    }
  }
  return out;
}

Dataset DownsampleDataset(const Dataset& d, double target_hz) {
  if (target_hz > d.geometry.sample_rate_hz) {
    throw ArgumentError("Downsample: target rate exceeds the recording rate");
  }
  Dataset out = d;
  for (Trial& t : out.trials) t.samples = Downsample(t.samples, target_hz);
  out.geometry.sample_rate_hz = target_hz;
  return out;
}

}  // namespace gazedp::ingest

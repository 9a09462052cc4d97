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

#ifndef GAZEDP_INGEST_DOWNSAMPLE_H_
#define GAZEDP_INGEST_DOWNSAMPLE_H_

#include <span>
#include <vector>

#include "gazedp/ingest/dataset.h"

namespace gazedp::ingest {

// Simulates a slower camera by decimation: keeps the first sample, then
// repeatedly the first sample at least 1/target_hz after the last kept one.
// No interpolation; validity flags travel with the kept samples. Spacing is
// compared with a 1 us tolerance because timestamps are integral.
//
// Throws ArgumentError if target_hz <= 0 or the samples are not ordered.
std::vector<GazeSample> Downsample(std::span<const GazeSample> samples,
                                   double target_hz);

// Downsamples every trial and updates the geometry's sample rate.
Dataset DownsampleDataset(const Dataset& d, double target_hz);

}  // namespace gazedp::ingest

#endif  // GAZEDP_INGEST_DOWNSAMPLE_H_

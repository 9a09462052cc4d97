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

#include "gazedp/events/geometry.h"

#include <cmath>
#include <numbers>

namespace gazedp::events {

PixelsPerDegree PxPerDegree(const ingest::ScreenGeometry& g) {
  const double mm_per_degree =
      2.0 * g.eye_distance_mm * std::tan(0.5 * std::numbers::pi / 180.0);
  return {mm_per_degree * g.width_px / g.width_mm,
          mm_per_degree * g.height_px / g.height_mm};
}

}  // namespace gazedp::events

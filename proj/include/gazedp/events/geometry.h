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

#ifndef GAZEDP_EVENTS_GEOMETRY_H_
#define GAZEDP_EVENTS_GEOMETRY_H_

#include "gazedp/ingest/dataset.h"

namespace gazedp::events {

struct PixelsPerDegree {
  double horizontal;
  double vertical;

  // Used for direction-free distances such as saccade amplitude.
  double mean() const { return 0.5 * (horizontal + vertical); }
};

// Pixels subtended by one degree of visual angle at the screen centre:
// 2 * d * tan(0.5 deg) millimetres times the per-axis pixel density.
PixelsPerDegree PxPerDegree(const ingest::ScreenGeometry& g);

}  // namespace gazedp::events

#endif  // GAZEDP_EVENTS_GEOMETRY_H_

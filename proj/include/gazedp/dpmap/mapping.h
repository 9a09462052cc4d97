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

#ifndef GAZEDP_DPMAP_MAPPING_H_
#define GAZEDP_DPMAP_MAPPING_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gazedp/dpmap/advantage.h"
#include "json.hpp"

namespace gazedp::dpmap {

enum class MappingKind { kLinear, kExponential, kSequential, kSigmoid };

std::string_view MappingKindName(MappingKind kind);
std::optional<MappingKind> MappingKindFromName(std::string_view name);

struct MappingSpec {
  MappingKind kind = MappingKind::kLinear;
  double eps_min = 0.1;
  double eps_max = 5.0;
  int levels = 7;
  double k = 1.5;  // sigmoid steepness
  int tiers = 3;   // sequential only; 3 is the only supported table
};

// Throws ArgumentError when the spec violates 0 < eps_min < eps_max < inf,
// levels >= 2, k > 0, or the sequential constraints (tiers == 3, L >= 5).
void CheckMappingSpec(const MappingSpec& spec);

// Target advantage for level l in 1..L. Level 1 is the most private and
// maps to adv(eps_min); level L maps to adv(eps_max).
Advantage GOfL(const MappingSpec& spec, int level);

// epsilon = ln((1 + g) / (1 - g)), clamped to [eps_min, eps_max].
double MapLevel(const MappingSpec& spec, int level);

struct MappingRow {
  int level = 0;
  double g = 0;
  double epsilon = 0;
};

std::vector<MappingRow> MappingTable(const MappingSpec& spec);

// Columns: l,g,epsilon,kind,eps_min,eps_max,k.
void WriteMappingTable(const MappingSpec& spec, std::ostream& out,
                       bool header = true);

MappingSpec MappingSpecFromJson(const nlohmann::json& j);
nlohmann::json MappingSpecToJson(const MappingSpec& spec);

}  // namespace gazedp::dpmap

#endif  // GAZEDP_DPMAP_MAPPING_H_

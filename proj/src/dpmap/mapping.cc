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

#include "gazedp/dpmap/mapping.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gazedp/common/csv.h"
#include "gazedp/common/errors.h"

namespace gazedp::dpmap {
namespace {

constexpr std::array<std::pair<MappingKind, std::string_view>, 4> kKindNames{{
    {MappingKind::kLinear, "linear"},
    {MappingKind::kExponential, "exponential"},
    {MappingKind::kSequential, "sequential"},
    {MappingKind::kSigmoid, "sigmoid"},
}};

// Convex combination of two advantages, done on both value and complement
// so neither loses precision.
Advantage Blend(const Advantage& lo, const Advantage& hi, double w_hi) {
  const double c = (1 - w_hi) * lo.complement() + w_hi * hi.complement();
  const double v = (1 - w_hi) * lo.value() + w_hi * hi.value();
  return v < 0.5 ? Advantage::FromValue(v) : Advantage::FromComplement(c);
}

}  // namespace

std::string_view MappingKindName(MappingKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<MappingKind> MappingKindFromName(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void CheckMappingSpec(const MappingSpec& spec) {
  if (!(spec.eps_min > 0) || !(spec.eps_max > spec.eps_min) ||
      !std::isfinite(spec.eps_max)) {
    throw ArgumentError("mapping requires 0 < eps_min < eps_max < inf");
  }
  if (spec.levels < 2) throw ArgumentError("mapping requires levels >= 2");
  if (spec.kind == MappingKind::kSigmoid &&
      !(spec.k > 0 && std::isfinite(spec.k))) {
    throw ArgumentError("sigmoid mapping requires k > 0");
  }
  if (spec.kind == MappingKind::kSequential) {
    if (spec.tiers != 3) {
      throw ArgumentError("sequential mapping supports tiers = 3 only");
    }
    if (spec.levels < 5) {
      throw ArgumentError(
          "sequential mapping requires levels >= 5 (tier ranges overlap)");
    }
  }
  AdversaryAdvantageExact(spec.eps_max);
}

Advantage GOfL(const MappingSpec& spec, int level) {
  CheckMappingSpec(spec);
  const int L = spec.levels;
  if (level < 1 || level > L) {
    throw ArgumentError("level " + std::to_string(level) +
                        " outside 1.." + std::to_string(L));
  }
  const Advantage lo = AdversaryAdvantageExact(spec.eps_min);
  const Advantage hi = AdversaryAdvantageExact(spec.eps_max);
  if (level == 1 && spec.kind != MappingKind::kSequential) return lo;
  if (level == L && spec.kind != MappingKind::kSequential) return hi;
  const double t = static_cast<double>(level - 1) / (L - 1);

  switch (spec.kind) {
    case MappingKind::kLinear:
      return Blend(lo, hi, t);
    case MappingKind::kExponential: {
      const double log_g = (1 - t) * std::log(lo.value()) +
                           t * std::log1p(-hi.complement());
      const double v = std::exp(log_g);
      return v < 0.5 ? Advantage::FromValue(v)
                     : Advantage::FromComplement(-std::expm1(log_g));
    }
    case MappingKind::kSequential:
      if (level <= 2) return lo;
      if (level >= L - 1) return hi;
      return Blend(lo, hi, 0.5);
    case MappingKind::kSigmoid: {
      // z = (L-1)/(l-1) - 1; weight on adv(eps_min) is 1 / (1 + z^-k).
      const double z = static_cast<double>(L - level) / (level - 1);
      const double w_lo = 1 / (1 + std::pow(z, -spec.k));
      return Blend(lo, hi, 1 - w_lo);
    }
  }
  throw ArgumentError("unknown mapping kind");
}

double MapLevel(const MappingSpec& spec, int level) {
  const double eps = AdvantageToEpsilon(GOfL(spec, level));
  return std::clamp(eps, spec.eps_min, spec.eps_max);
}

std::vector<MappingRow> MappingTable(const MappingSpec& spec) {
  std::vector<MappingRow> rows;
  for (int l = 1; l <= spec.levels; ++l) {
    rows.push_back({l, GOfL(spec, l).value(), MapLevel(spec, l)});
  }
  return rows;
}

void WriteMappingTable(const MappingSpec& spec, std::ostream& out,
                       bool header) {
  if (header) out << "l,g,epsilon,kind,eps_min,eps_max,k\n";
  for (const MappingRow& r : MappingTable(spec)) {
    out << r.level << ',' << csv::FormatDouble(r.g) << ','
        << csv::FormatDouble(r.epsilon) << ',' << MappingKindName(spec.kind)
        << ',' << csv::FormatDouble(spec.eps_min) << ','
        << csv::FormatDouble(spec.eps_max) << ','
        << csv::FormatDouble(spec.k) << '\n';
  }
}

MappingSpec MappingSpecFromJson(const nlohmann::json& j) {
  MappingSpec spec;
  if (!j.is_object()) throw ArgumentError("mapping spec must be an object");
  if (j.contains("kind")) {
    const auto name = j.at("kind").get<std::string>();
    const auto kind = MappingKindFromName(name);
    if (!kind) throw ArgumentError("unknown mapping kind: " + name);
    spec.kind = *kind;
  }
  spec.eps_min = j.value("eps_min", spec.eps_min);
  spec.eps_max = j.value("eps_max", spec.eps_max);
  spec.levels = j.value("levels", spec.levels);
  spec.k = j.value("k", spec.k);
  spec.tiers = j.value("tiers", spec.tiers);
  CheckMappingSpec(spec);
  return spec;
}

nlohmann::json MappingSpecToJson(const MappingSpec& spec) {
  return {{"kind", MappingKindName(spec.kind)}, {"eps_min", spec.eps_min},
          {"eps_max", spec.eps_max},           {"levels", spec.levels},
          {"k", spec.k},                       {"tiers", spec.tiers}};
}

}  // namespace gazedp::dpmap

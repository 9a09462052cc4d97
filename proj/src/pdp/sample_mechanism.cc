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

#include "gazedp/pdp/sample_mechanism.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gazedp/common/errors.h"

namespace gazedp::pdp {
namespace {

constexpr int kThresholdGrid = 200;

void CheckBudget(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw ArgumentError("privacy budgets must be positive and finite");
  }
}

std::vector<double> Values(std::span<const BudgetedRecord> records) {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.value);
  return v;
}

std::vector<double> Distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

double SampleInclusionProbability(double eps_i, double t) {
  CheckBudget(eps_i);
  CheckBudget(t);
  if (eps_i >= t) return 1.0;
  return std::expm1(eps_i) / std::expm1(t);
}

std::string_view QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kCount:
      return "count";
    case QueryKind::kMedian:
      return "median";
    case QueryKind::kMin:
      return "min";
  }
  return "unknown";
}

std::optional<QueryKind> QueryKindFromName(std::string_view name) {
  for (QueryKind k : {QueryKind::kCount, QueryKind::kMedian, QueryKind::kMin}) {
    if (QueryKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view ThresholdPolicyName(ThresholdPolicy policy) {
  return policy == ThresholdPolicy::kEpsMax ? "eps_max" : "optimal";
}

std::optional<ThresholdPolicy> ThresholdPolicyFromName(std::string_view name) {
  if (name == "eps_max") return ThresholdPolicy::kEpsMax;
  if (name == "optimal") return ThresholdPolicy::kOptimal;
  return std::nullopt;
}

double ChooseThreshold(std::span<const double> budgets,
                       ThresholdPolicy policy) {
  if (budgets.empty()) throw ArgumentError("no budgets to choose t from");
  for (double e : budgets) CheckBudget(e);
  const auto [lo_it, hi_it] = std::minmax_element(budgets.begin(), budgets.end());
  const double lo = *lo_it, hi = *hi_it;
  if (policy == ThresholdPolicy::kEpsMax || lo == hi) return hi;

  double best_t = hi;
  double best_cost = INFINITY;
  for (int s = 0; s <= kThresholdGrid; ++s) {
    const double t =
        s == kThresholdGrid
            ? hi
            : lo * std::pow(hi / lo, static_cast<double>(s) / kThresholdGrid);
    double cost = 1 / t;
    for (double e : budgets) cost += 1 - SampleInclusionProbability(e, t);
    if (cost < best_cost) {
      best_cost = cost;
      best_t = t;
    }
  }
  return best_t;
}

double ExactQuery(QueryKind kind, std::span<const BudgetedRecord> records) {
  if (records.empty()) throw ArgumentError("query on an empty record list");
  std::vector<double> v = Values(records);
  switch (kind) {
    case QueryKind::kCount:
      return static_cast<double>(
          std::count_if(v.begin(), v.end(), [](double x) { return x != 0; }));
    case QueryKind::kMedian: {
      std::sort(v.begin(), v.end());
      return v[(v.size() - 1) / 2];
    }
    case QueryKind::kMin:
      return *std::min_element(v.begin(), v.end());
  }
  throw ArgumentError("unknown query kind");
}

MechanismResult PdpQuery(QueryKind kind,
                         std::span<const BudgetedRecord> records,
                         const SampleMechanismSpec& spec) {
  if (records.empty()) throw ArgumentError("query on an empty record list");
  CheckBudget(spec.threshold_t);
  const double t = spec.threshold_t;

  Rng sample_rng = MakeRng(DeriveSeed(spec.seed, "sample"));
  std::vector<double> kept;
  std::vector<double> spent;
  spent.reserve(records.size());
  for (const auto& r : records) {
    const double pi = SampleInclusionProbability(r.epsilon, t);
    spent.push_back(r.epsilon);
    if (UniformUnit(sample_rng) < pi) kept.push_back(r.value);
  }

  MechanismResult result;
  result.seed = spec.seed;
  result.epsilon_spent = std::move(spent);
  result.details = {{"threshold_t", t},
                    {"kept", kept.size()},
                    {"query", QueryKindName(kind)}};

  if (kind == QueryKind::kCount) {
    const double count = static_cast<double>(
        std::count_if(kept.begin(), kept.end(), [](double x) { return x != 0; }));
    const MechanismResult lap = LaplaceMechanism(count, 1.0, t, spec.seed);
    result.value = lap.value;
    result.mechanism = "sample+laplace";
    result.details["sensitivity"] = 1.0;
    return result;
  }

  const std::vector<double> candidates = Distinct(Values(records));
  std::vector<double> quality(candidates.size(), 0.0);
  if (!kept.empty()) {
    std::sort(kept.begin(), kept.end());
    const double kmin = kept.front();
    const double range = candidates.back() - candidates.front();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double c = candidates[i];
      if (kind == QueryKind::kMedian) {
        const auto below = std::lower_bound(kept.begin(), kept.end(), c) -
                           kept.begin();
        const auto above =
            kept.end() - std::upper_bound(kept.begin(), kept.end(), c);
        quality[i] = -std::abs(static_cast<double>(below - above));
      } else {
        quality[i] = range > 0 ? -std::abs(c - kmin) / range : 0.0;
      }
    }
  }
  result.value = candidates[ExponentialMechanismIndex(quality, 1.0, t,
                                                      spec.seed)];
  result.mechanism = "sample+exponential";
  result.details["sensitivity"] = 1.0;
  result.details["candidates"] = candidates.size();
  return result;
}

double StaticEpsilon(std::span<const double> budgets) {
  if (budgets.empty()) throw ArgumentError("static epsilon of no records");
  for (double e : budgets) CheckBudget(e);
  return *std::min_element(budgets.begin(), budgets.end());
}

double StaticEpsilon(std::span<const BudgetedRecord> records) {
  std::vector<double> b;
  for (const auto& r : records) b.push_back(r.epsilon);
  return StaticEpsilon(b);
}

}  // namespace gazedp::pdp

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

#ifndef GAZEDP_PDP_SAMPLE_MECHANISM_H_
#define GAZEDP_PDP_SAMPLE_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gazedp/pdp/mechanisms.h"

namespace gazedp::pdp {

struct BudgetedRecord {
  double value = 0;
  double epsilon = 1;
};

// Sample mechanism: record i is kept with probability pi_i, then a
// threshold_t-DP mechanism answers on the kept records.
struct SampleMechanismSpec {
  double threshold_t = 1;
  uint64_t seed = 0;
};

// (e^eps_i - 1) / (e^t - 1) for eps_i < t, else 1.
double SampleInclusionProbability(double eps_i, double t);

enum class QueryKind { kCount, kMedian, kMin };

std::string_view QueryKindName(QueryKind kind);
std::optional<QueryKind> QueryKindFromName(std::string_view name);

// How an analyst picks t from the budgets alone.
enum class ThresholdPolicy {
  kEpsMax,   // t = max eps_i
  kOptimal,  // t minimizing expected dropped records + Laplace mean |noise|
};

std::string_view ThresholdPolicyName(ThresholdPolicy policy);
std::optional<ThresholdPolicy> ThresholdPolicyFromName(std::string_view name);

// For kOptimal, minimizes sum_i (1 - pi_i(t)) + 1/t over t on a
// log-spaced grid between min and max eps_i (both included).
double ChooseThreshold(std::span<const double> budgets,
                       ThresholdPolicy policy);

// Exact (noise-free) answers used as ground truth. count: records with a
// nonzero value; median: lower median; min: smallest value.
double ExactQuery(QueryKind kind, std::span<const BudgetedRecord> records);

// Subsample, then answer. count uses Laplace with sensitivity 1; median
// and min use the exponential mechanism over the distinct observed values,
// with qualities -|#{x < c} - #{x > c}| (median) and -(c - min) / range
// (min), both of sensitivity 1. Throws ArgumentError on empty records or
// nonpositive budgets.
MechanismResult PdpQuery(QueryKind kind,
                         std::span<const BudgetedRecord> records,
                         const SampleMechanismSpec& spec);

// Smallest budget, the worst-case uniform epsilon.
double StaticEpsilon(std::span<const BudgetedRecord> records);
double StaticEpsilon(std::span<const double> budgets);

}  // namespace gazedp::pdp

#endif  // GAZEDP_PDP_SAMPLE_MECHANISM_H_

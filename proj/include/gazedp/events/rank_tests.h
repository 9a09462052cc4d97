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

#ifndef GAZEDP_EVENTS_RANK_TESTS_H_
#define GAZEDP_EVENTS_RANK_TESTS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gazedp::events {

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  std::string method;
};

enum class PMethod { kAuto, kExact, kAsymptotic };

// Two-sided Mann-Whitney U test. `statistic` is U for sample `a`, computed
// with midranks. kAuto uses the exact permutation distribution (ties
// included) when |a| + |b| <= 20 and the tie-corrected normal approximation
// with continuity correction otherwise. Throws ArgumentError on empty input.
TestResult MannWhitneyU(std::span<const double> a, std::span<const double> b,
                        PMethod method = PMethod::kAuto);

// Kruskal-Wallis H with tie correction; p from chi-square with k - 1 degrees
// of freedom. Groups made of one repeated constant give H = 0, p = 1.
// Throws ArgumentError for fewer than two groups or an empty group.
TestResult KruskalWallis(const std::vector<std::vector<double>>& groups);

struct PairwiseResult {
  std::size_t group_a = 0;
  std::size_t group_b = 0;
  double z = 0;
  double p_unadjusted = 1;
  double p_adjusted = 1;  // Bonferroni: times the number of pairs, capped at 1
};

// Dunn's post-hoc test on mean ranks, every pair (i < j) in order.
std::vector<PairwiseResult> DunnBonferroni(
    const std::vector<std::vector<double>>& groups);

// Midranks (1-based) of `values`.
std::vector<double> MidRanks(std::span<const double> values);

}  // namespace gazedp::events

#endif  // GAZEDP_EVENTS_RANK_TESTS_H_

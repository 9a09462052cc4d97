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
#include <vector>

#include <gtest/gtest.h>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/events/rank_tests.h"

namespace gazedp::events {
namespace {

// Independent oracle: enumerate every way of drawing |a| of the pooled
// midranks and read the two-sided tail of U.
double EnumeratedMannWhitneyP(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (double v : pooled) {
      below += v < pooled[i];
      equal += v == pooled[i];
    }
    ranks[i] = below + (equal + 1) / 2;
  }
  auto u_of = [&](const std::vector<bool>& pick) {
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) r += pick[i] ? ranks[i] : 0;
    return r - static_cast<double>(na * (na + 1)) / 2;
  };
  std::vector<bool> observed(n, false);
  std::fill(observed.begin(), observed.begin() + static_cast<long>(na), true);
  const double u_obs = u_of(observed);

  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<long>(na), pick.end(), true);
  double total = 0, le = 0, ge = 0;
  do {
    const double u = u_of(pick);
    total += 1;
    le += u <= u_obs + 1e-9;
    ge += u >= u_obs - 1e-9;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return std::min(1.0, 2 * std::min(le, ge) / total);
}

TEST(MannWhitneyTest, SeparatedTriplesExactP) {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  const TestResult r = MannWhitneyU(a, b);
  EXPECT_EQ(r.statistic, 0);
  EXPECT_NEAR(r.p_value, 0.1, 1e-12);
  EXPECT_NEAR(EnumeratedMannWhitneyP(a, b), 0.1, 1e-12);
}

TEST(MannWhitneyTest, IdenticalListsAndSymmetry) {
  const std::vector<double> a = {3, 1, 4, 1, 5}, b = {9, 2, 6, 5, 3, 5};
  EXPECT_NEAR(MannWhitneyU(a, a).p_value, 1.0, 1e-9);
  EXPECT_NEAR(MannWhitneyU(a, b).p_value, MannWhitneyU(b, a).p_value, 1e-12);
  EXPECT_NEAR(MannWhitneyU(a, b, PMethod::kAsymptotic).p_value,
              MannWhitneyU(b, a, PMethod::kAsymptotic).p_value, 1e-12);
}

TEST(MannWhitneyTest, ExactMatchesEnumerationWithTies) {
  Rng rng = MakeRng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t na = 1 + rng() % 6, nb = 1 + rng() % 6;
    std::vector<double> a(na), b(nb);
    for (double& v : a) v = static_cast<double>(rng() % 5);
    for (double& v : b) v = static_cast<double>(rng() % 5) + (trial % 2);
    EXPECT_NEAR(MannWhitneyU(a, b, PMethod::kExact).p_value,
                EnumeratedMannWhitneyP(a, b), 1e-12)
        << "trial " << trial;
  }
}

TEST(MannWhitneyTest, ExactAndAsymptoticAgreeWithoutTies) {
  Rng rng = MakeRng(32);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (double& v : a) v = UniformUnit(rng);
    for (double& v : b) v = UniformUnit(rng) + 0.1 * (trial % 4);
    EXPECT_NEAR(MannWhitneyU(a, b, PMethod::kExact).p_value,
                MannWhitneyU(a, b, PMethod::kAsymptotic).p_value, 0.01);
  }
}

TEST(MannWhitneyTest, AutoPicksExactUpToTwenty) {
  std::vector<double> a(10), b(10), c(11);
  for (int i = 0; i < 10; ++i) a[i] = i, b[i] = i + 0.5;
  for (int i = 0; i < 11; ++i) c[i] = i + 0.25;
  EXPECT_EQ(MannWhitneyU(a, b).method, MannWhitneyU(a, b, PMethod::kExact).method);
  EXPECT_EQ(MannWhitneyU(a, c).method, MannWhitneyU(a, c, PMethod::kAsymptotic).method);
}

TEST(MannWhitneyTest, EmptyInputThrows) {
  const std::vector<double> a = {1.0}, none;
  EXPECT_THROW(MannWhitneyU(a, none), ArgumentError);
  EXPECT_THROW(MannWhitneyU(none, a), ArgumentError);
}

TEST(KruskalWallisTest, HandEvaluatedPairs) {
  // Rank sums 3, 7, 11 over N = 6: 12 / 42 * (9 + 49 + 121) / 2 - 21.
  const double oracle = 12.0 / 42 * (9.0 + 49 + 121) / 2 - 21;
  const TestResult r = KruskalWallis({{1, 2}, {3, 4}, {5, 6}});
  EXPECT_NEAR(r.statistic, oracle, 1e-12);
  EXPECT_NEAR(r.statistic, 4.5714, 1e-3);
  // Chi-square with two degrees of freedom has survival exp(-x / 2).
  EXPECT_NEAR(r.p_value, std::exp(-oracle / 2), 1e-12);
}

TEST(KruskalWallisTest, TieCorrectionMatchesFormula) {
  // Pooled {1,1,2,2,2,3}: midranks 1.5,1.5,4,4,4,6; ties of sizes 2 and 3.
  const std::vector<std::vector<double>> groups = {{1, 2}, {1, 2, 3}, {2}};
  const double r1 = 1.5 + 4, r2 = 1.5 + 4 + 6, r3 = 4;
  const double h = 12.0 / 42 * (r1 * r1 / 2 + r2 * r2 / 3 + r3 * r3 / 1) - 21;
  const double correction = 1 - ((8.0 - 2) + (27.0 - 3)) / (216.0 - 6);
  EXPECT_NEAR(KruskalWallis(groups).statistic, h / correction, 1e-12);
}

TEST(KruskalWallisTest, ConstantsAndExchangeability) {
  const TestResult flat = KruskalWallis({{2, 2}, {2, 2, 2}, {2}});
  EXPECT_EQ(flat.statistic, 0);
  EXPECT_EQ(flat.p_value, 1);
  const std::vector<std::vector<double>> g = {{1, 5, 2}, {8, 3}, {4, 4, 9, 7}};
  const std::vector<std::vector<double>> swapped = {g[2], g[0], g[1]};
  EXPECT_NEAR(KruskalWallis(g).statistic, KruskalWallis(swapped).statistic, 1e-12);
  const TestResult r = KruskalWallis(g);
  EXPECT_GE(r.p_value, 0);
  EXPECT_LE(r.p_value, 1);
}

TEST(KruskalWallisTest, RejectsDegenerateDesigns) {
  EXPECT_THROW(KruskalWallis({{1, 2, 3}}), ArgumentError);
  EXPECT_THROW(KruskalWallis({{1, 2}, {}}), ArgumentError);
}

TEST(DunnTest, PairCountAndHandValues) {
  const auto pairs = DunnBonferroni({{1, 2}, {3, 4}, {5, 6}});
  ASSERT_EQ(pairs.size(), 3u);
  // Mean ranks 1.5, 3.5, 5.5; se = sqrt(N (N + 1) / 12 * (1/2 + 1/2)).
  const double se = std::sqrt(6.0 * 7 / 12);
  for (const PairwiseResult& p : pairs) {
    const double gap = 2.0 * static_cast<double>(p.group_b - p.group_a);
    EXPECT_NEAR(std::abs(p.z), gap / se, 1e-12);
    const double raw = std::erfc(std::abs(p.z) / std::sqrt(2.0));
    EXPECT_NEAR(p.p_unadjusted, raw, 1e-12);
    EXPECT_NEAR(p.p_adjusted, std::min(1.0, 3 * raw), 1e-12);
    EXPECT_GE(p.p_adjusted, p.p_unadjusted);
  }
}

TEST(DunnTest, IdenticalGroupsAreNeverSignificant) {
  for (const PairwiseResult& p : DunnBonferroni({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}})) {
    EXPECT_DOUBLE_EQ(p.p_adjusted, 1.0);
  }
  EXPECT_EQ(DunnBonferroni({{1}, {2}, {3}, {4}}).size(), 6u);
}

TEST(MidRanksTest, TiesShareTheAverageRank) {
  const std::vector<double> v = {3, 1, 2, 2};
  EXPECT_EQ(MidRanks(v), (std::vector<double>{4, 1, 2.5, 2.5}));
}

}  // namespace
}  // namespace gazedp::events

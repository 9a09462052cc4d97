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
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/dpmap/advantage.h"
#include "gazedp/pdp/audit.h"
#include "gazedp/pdp/mechanisms.h"
#include "gazedp/pdp/regression.h"
#include "gazedp/pdp/sample_mechanism.h"

namespace gazedp::pdp {
namespace {

double ChiSquareP(const std::vector<double>& observed, const std::vector<double>& probs) {
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  double chi2 = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probs[i];
    chi2 += (observed[i] - e) * (observed[i] - e) / e;
  }
  return boost::math::gamma_q(0.5 * static_cast<double>(observed.size() - 1), chi2 / 2);
}

TEST(LaplaceTest, VanishingNoiseAndDeterminism) {
  EXPECT_NEAR(LaplaceMechanism(42, 1, 1e9, 3).value, 42, 1e-6);
  EXPECT_EQ(LaplaceMechanism(42, 1, 0.5, 3).value, LaplaceMechanism(42, 1, 0.5, 3).value);
  EXPECT_NE(LaplaceMechanism(42, 1, 0.5, 3).value, LaplaceMechanism(42, 1, 0.5, 4).value);
  const MechanismResult r = LaplaceMechanism(1, 2, 0.5, 9);
  EXPECT_EQ(r.seed, 9u);
  EXPECT_EQ(r.epsilon_spent, std::vector<double>{0.5});
  EXPECT_FALSE(r.mechanism.empty());
}

TEST(LaplaceTest, UnbiasedWithVarianceTwoBSquared) {
  constexpr int kDraws = 100000;
  const double scale = 2.0 / 0.8;
  double sum = 0, sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double v = LaplaceMechanism(10, 2, 0.8, static_cast<uint64_t>(i)).value - 10;
    sum += v;
    sq += v * v;
  }
  EXPECT_NEAR(sum / kDraws, 0, 4 * scale / std::sqrt(kDraws));
  EXPECT_NEAR(sq / kDraws / (2 * scale * scale), 1.0, 0.1);
}

TEST(LaplaceTest, RejectsBadParameters) {
  EXPECT_THROW(LaplaceMechanism(0, 1, 0, 1), ArgumentError);
  EXPECT_THROW(LaplaceMechanism(0, 1, -1, 1), ArgumentError);
  EXPECT_THROW(LaplaceMechanism(0, 0, 1, 1), ArgumentError);
}

TEST(ExponentialMechanismTest, SingleCandidate) {
  const std::vector<double> q = {-3};
  for (uint64_t s = 0; s < 50; ++s) EXPECT_EQ(ExponentialMechanismIndex(q, 1, 0.1, s), 0u);
  const std::vector<std::string> names = {"only"};
  EXPECT_EQ(ExponentialMechanism<std::string>(
                names, [](const std::string&) { return 0.0; }, 1, 1, 0),
            "only");
  EXPECT_THROW(ExponentialMechanismIndex({}, 1, 1, 0), ArgumentError);
}

TEST(ExponentialMechanismTest, LargeEpsilonPicksTheBest) {
  const std::vector<double> q = {0, 1};
  int best = 0;
  for (uint64_t s = 0; s < 10000; ++s) best += ExponentialMechanismIndex(q, 1, 50, s) == 1;
  EXPECT_EQ(best, 10000);  // P(worse) = 1 / (1 + e^25)
}

TEST(ExponentialMechanismTest, FrequenciesMatchTheGibbsLaw) {
  const std::vector<double> uniform = {0, 0, 0, 0, 0};
  const std::vector<double> graded = {0, -1, -2};
  std::vector<double> cu(5, 0), cg(3, 0);
  for (uint64_t s = 0; s < 20000; ++s) {
    cu[ExponentialMechanismIndex(uniform, 1, 1, s)] += 1;
    cg[ExponentialMechanismIndex(graded, 1, 2, s)] += 1;
  }
  EXPECT_GT(ChiSquareP(cu, std::vector<double>(5, 0.2)), 0.01);
  // Weights exp(eps q / 2) with eps = 2: 1, e^-1, e^-2.
  const double z = 1 + std::exp(-1.0) + std::exp(-2.0);
  EXPECT_GT(ChiSquareP(cg, {1 / z, std::exp(-1.0) / z, std::exp(-2.0) / z}), 0.01);
}

TEST(RandomizedResponseTest, TruthProbability) {
  const double eps = std::log(3.0);
  int truthful = 0;
  for (uint64_t s = 0; s < 20000; ++s) truthful += RandomizedResponse(true, eps, s);
  // P(truth) = e^eps / (1 + e^eps) = 0.75; sd of the frequency is 0.0031.
  EXPECT_NEAR(truthful / 20000.0, 0.75, 4 * 0.0031);
}

TEST(SampleInclusionTest, ClosedFormsAndShape) {
  EXPECT_EQ(SampleInclusionProbability(2, 2), 1);
  EXPECT_EQ(SampleInclusionProbability(3, 2), 1);
  EXPECT_NEAR(SampleInclusionProbability(1e-12, 5), 0, 1e-12);
  EXPECT_NEAR(SampleInclusionProbability(std::log(2.0), std::log(3.0)), 0.5, 1e-15);
  double prev = 0;
  for (double e = 0.01; e < 4; e += 0.01) {
    const double p = SampleInclusionProbability(e, 3);
    EXPECT_GE(p, prev);
    EXPECT_LE(p, 1);
    prev = p;
  }
  EXPECT_THROW(SampleInclusionProbability(0, 1), ArgumentError);
  EXPECT_THROW(SampleInclusionProbability(1, -1), ArgumentError);
}

std::vector<BudgetedRecord> Records(const std::vector<double>& values, double eps) {
  std::vector<BudgetedRecord> out;
  for (double v : values) out.push_back({v, eps});
  return out;
}

TEST(PdpQueryTest, FullInclusionCountEqualsLaplace) {
  const auto records = Records({1, 0, 1, 1, 0, 1}, 0.7);
  for (uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(PdpQuery(QueryKind::kCount, records, {0.7, s}).value,
              LaplaceMechanism(4, 1, 0.7, s).value);
  }
}

TEST(PdpQueryTest, TinyBudgetsDropEverything) {
  const auto records = Records(std::vector<double>(200, 1.0), 1e-6);
  double sum = 0;
  for (uint64_t s = 0; s < 400; ++s) sum += PdpQuery(QueryKind::kCount, records, {5, s}).value;
  // Each record survives with probability about 1e-6 / 147; noise scale 0.2.
  EXPECT_NEAR(sum / 400, 0, 4 * 0.2 * std::sqrt(2.0) / std::sqrt(400.0));
}

TEST(PdpQueryTest, MedianConcentrates) {
  const auto records = Records({1, 2, 3, 4, 5, 6, 7, 8, 9}, 5);
  int hits = 0;
  for (uint64_t s = 0; s < 1000; ++s) hits += PdpQuery(QueryKind::kMedian, records, {5, s}).value == 5;
  EXPECT_GT(hits, 900);
}

TEST(PdpQueryTest, MinConcentratesAtHighBudget) {
  const auto records = Records({4, 9, 2, 7, 2, 30}, 200);
  int hits = 0;
  for (uint64_t s = 0; s < 200; ++s) hits += PdpQuery(QueryKind::kMin, records, {200, s}).value == 2;
  EXPECT_GT(hits, 190);
}

TEST(PdpQueryTest, ExactAnswersAndErrors) {
  const auto records = Records({3, 0, 7, 1, 0}, 1);
  EXPECT_EQ(ExactQuery(QueryKind::kCount, records), 3);
  EXPECT_EQ(ExactQuery(QueryKind::kMedian, records), 1);
  EXPECT_EQ(ExactQuery(QueryKind::kMin, records), 0);
  EXPECT_THROW(PdpQuery(QueryKind::kCount, {}, {1, 0}), ArgumentError);
  EXPECT_THROW(ExactQuery(QueryKind::kMedian, {}), ArgumentError);
}

TEST(PdpQueryTest, ReproducibleAndEchoesBudgets) {
  std::vector<BudgetedRecord> records = {{1, 0.2}, {0, 3}, {1, 1}};
  const MechanismResult a = PdpQuery(QueryKind::kCount, records, {1, 77});
  const MechanismResult b = PdpQuery(QueryKind::kCount, records, {1, 77});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.epsilon_spent, (std::vector<double>{0.2, 3, 1}));
  EXPECT_EQ(ToJson(a).dump(), ToJson(b).dump());
}

TEST(StaticEpsilonTest, MinimumBudget) {
  std::vector<BudgetedRecord> r = {{0, 0.1}, {0, 1}, {0, 5}};
  EXPECT_EQ(StaticEpsilon(r), 0.1);
  std::reverse(r.begin(), r.end());
  EXPECT_EQ(StaticEpsilon(r), 0.1);
  EXPECT_EQ(StaticEpsilon(Records({1, 2, 3}, 0.4)), 0.4);
  EXPECT_THROW(StaticEpsilon(std::vector<BudgetedRecord>{}), ArgumentError);
}

TEST(ChooseThresholdTest, PoliciesBehave) {
  const std::vector<double> budgets = {0.1, 0.5, 2, 5, 5};
  EXPECT_EQ(ChooseThreshold(budgets, ThresholdPolicy::kEpsMax), 5);
  EXPECT_EQ(ChooseThreshold(std::vector<double>{0.3, 0.3}, ThresholdPolicy::kOptimal), 0.3);
  // Many strict records: waiting for the top budget drops them all.
  std::vector<double> strict(100, 0.1);
  strict.push_back(5);
  EXPECT_NEAR(ChooseThreshold(strict, ThresholdPolicy::kOptimal), 0.1, 1e-12);
  // Mostly generous records: t moves towards the top.
  std::vector<double> generous(100, 5);
  generous.push_back(0.1);
  EXPECT_GT(ChooseThreshold(generous, ThresholdPolicy::kOptimal), 4);
  EXPECT_THROW(ChooseThreshold(std::vector<double>{}, ThresholdPolicy::kOptimal), ArgumentError);
}

TEST(ChooseThresholdTest, OptimalBeatsEndpointsAndCoarseGrid) {
  // Expected error: dropped records plus mean |Laplace(1/t)|.
  auto cost = [](const std::vector<double>& b, double t) {
    double c = 1 / t;
    for (double e : b) c += 1 - (e >= t ? 1 : std::expm1(e) / std::expm1(t));
    return c;
  };
  Rng rng = MakeRng(71);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> b(20 + rng() % 40);
    for (double& e : b) e = 0.1 + 4.9 * UniformUnit(rng) * UniformUnit(rng);
    const double lo = *std::min_element(b.begin(), b.end());
    const double hi = *std::max_element(b.begin(), b.end());
    const double chosen = cost(b, ChooseThreshold(b, ThresholdPolicy::kOptimal));
    EXPECT_LE(chosen, cost(b, lo) + 1e-12);
    EXPECT_LE(chosen, cost(b, hi) + 1e-12);
    for (int s = 0; s <= 20; ++s) {
      EXPECT_LE(chosen, cost(b, lo * std::pow(hi / lo, s / 20.0)) + 1e-9);
    }
  }
}

struct Problem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

Problem LinearProblem(int n, uint64_t seed, double noise = 0.1) {
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> normal(0, 1);
  Problem p{Eigen::MatrixXd(n, 3), Eigen::VectorXd(n)};
  const Eigen::Vector3d beta(0.8, -0.5, 0.3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) p.X(i, j) = normal(rng);
    p.y(i) = p.X.row(i).dot(beta) + 0.4 + noise * normal(rng);
  }
  return p;
}

TEST(DpRegressionTest, NoiselessLimitMatchesLeastSquares) {
  const Problem p = LinearProblem(200, 1);
  Eigen::MatrixXd A(200, 4);
  A << p.X, Eigen::VectorXd::Ones(200);
  const Eigen::VectorXd ols = A.colPivHouseholderQr().solve(p.y);
  RegressionHyper h;
  h.clip_norm = 1e6;
  h.epochs = 3000;
  h.rate = 0.1;
  h.noiseless = true;
  const std::vector<double> budgets(200, 1e6);
  for (RegressionStrategy s : {RegressionStrategy::kWeighting, RegressionStrategy::kSampling}) {
    const MechanismResult r = DpRegression(p.X, p.y, budgets, s, h);
    ASSERT_EQ(r.coefficients.size(), 4u);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(r.coefficients[static_cast<std::size_t>(j)], ols(j), 1e-3);
  }
}

TEST(DpRegressionTest, ZeroWeightsLeaveInitialisation) {
  const Problem p = LinearProblem(100, 2);
  RegressionHyper h;
  h.noiseless = true;
  h.eps_ref = 1.0;
  const std::vector<double> budgets(100, 1e-12);
  const MechanismResult r =
      DpRegression(p.X, p.y, budgets, RegressionStrategy::kWeighting, h);
  for (double c : r.coefficients) EXPECT_NEAR(c, 0, 1e-9);
}

TEST(DpRegressionTest, ShrinkingBudgetsDoesNotHelp) {
  const Problem train = LinearProblem(300, 3, 0.5);
  const Problem test = LinearProblem(300, 4, 0.5);
  for (RegressionStrategy s : {RegressionStrategy::kWeighting, RegressionStrategy::kSampling}) {
    std::vector<double> big, small;
    for (uint64_t seed = 0; seed < 10; ++seed) {
      RegressionHyper h;
      h.seed = seed;
      h.batch_size = 32;
      h.epochs = 30;
      for (double scale : {1.0, 0.1}) {
        std::vector<double> budgets(300);
        for (std::size_t i = 0; i < budgets.size(); ++i) budgets[i] = scale * (0.5 + i % 5);
        const MechanismResult r = DpRegression(train.X, train.y, budgets, s, h);
        const double r2 = RSquared(test.y, PredictLinear(test.X, r.coefficients));
        (scale == 1.0 ? big : small).push_back(r2);
      }
    }
    std::sort(big.begin(), big.end());
    std::sort(small.begin(), small.end());
    EXPECT_GE(big[5] + big[4], small[5] + small[4]) << RegressionStrategyName(s);
  }
}

TEST(DpRegressionTest, PermutingRowsWithIdsIsExact) {
  const Problem p = LinearProblem(60, 5);
  std::vector<double> budgets(60);
  std::vector<uint64_t> ids(60);
  for (std::size_t i = 0; i < 60; ++i) {
    budgets[i] = 0.2 + 0.1 * static_cast<double>(i % 7);
    ids[i] = 1000 + i;
  }
  std::vector<std::size_t> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng = MakeRng(6);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd X2(60, 3);
  Eigen::VectorXd y2(60);
  std::vector<double> b2(60);
  std::vector<uint64_t> ids2(60);
  for (std::size_t i = 0; i < 60; ++i) {
    X2.row(static_cast<Eigen::Index>(i)) = p.X.row(static_cast<Eigen::Index>(perm[i]));
    y2(static_cast<Eigen::Index>(i)) = p.y(static_cast<Eigen::Index>(perm[i]));
    b2[i] = budgets[perm[i]];
    ids2[i] = ids[perm[i]];
  }
  for (int batch : {0, 16}) {
    for (RegressionStrategy s : {RegressionStrategy::kWeighting, RegressionStrategy::kSampling}) {
      RegressionHyper h;
      h.seed = 8;
      h.batch_size = batch;
      h.epochs = 20;
      EXPECT_EQ(DpRegression(p.X, p.y, budgets, s, h, ids).coefficients,
                DpRegression(X2, y2, b2, s, h, ids2).coefficients);
    }
  }
}

TEST(DpRegressionTest, DeterministicAndValidated) {
  const Problem p = LinearProblem(40, 7);
  const std::vector<double> budgets(40, 1.0);
  RegressionHyper h;
  h.seed = 3;
  EXPECT_EQ(DpRegression(p.X, p.y, budgets, RegressionStrategy::kSampling, h).coefficients,
            DpRegression(p.X, p.y, budgets, RegressionStrategy::kSampling, h).coefficients);
  EXPECT_THROW(DpRegression(p.X, p.y.head(39), budgets, RegressionStrategy::kWeighting, h),
               ArgumentError);
  EXPECT_THROW(DpRegression(p.X, p.y, std::vector<double>(39, 1.0),
                            RegressionStrategy::kWeighting, h),
               ArgumentError);
  RegressionHyper bad = h;
  bad.clip_norm = 0;
  EXPECT_THROW(DpRegression(p.X, p.y, budgets, RegressionStrategy::kWeighting, bad),
               ArgumentError);
  bad = h;
  bad.eps_ref = 0.5;  // below the largest budget
  EXPECT_THROW(DpRegression(p.X, p.y, budgets, RegressionStrategy::kWeighting, bad),
               ArgumentError);
}

TEST(RSquaredTest, PerfectAndMeanPredictions) {
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(10, 0, 9);
  EXPECT_DOUBLE_EQ(RSquared(y, y), 1.0);
  EXPECT_NEAR(RSquared(y, Eigen::VectorXd::Constant(10, 4.5)), 0.0, 1e-12);
}

TEST(AuditTest, RandomizedResponseAttainsItsBound) {
  const double eps = std::log(3.0);
  const AuditReport r = AuditAdvantage(RandomizedResponseTarget(eps), std::vector<double>{0},
                                       std::vector<double>{1}, 40000, 1);
  EXPECT_NEAR(r.theoretical_bound, 0.5, 1e-15);
  EXPECT_NEAR(r.empirical_advantage, 0.5, 3 * r.std_error);
  EXPECT_GT(r.std_error, 0);
}

TEST(AuditTest, LaplaceMatchesTotalVariation) {
  // The likelihood-ratio test on Lap(c, 1/eps) vs Lap(c + 1, 1/eps) wins
  // with advantage equal to the total variation 1 - e^(-eps/2).
  const std::vector<double> d0 = {1, 0, 1}, d1 = {1, 1, 1};
  const AuditReport r = AuditAdvantage(LaplaceCountTarget(1.0), d0, d1, 40000, 2);
  EXPECT_NEAR(r.theoretical_bound, 0.462117, 1e-6);
  EXPECT_LE(r.empirical_advantage, r.theoretical_bound + 3 * r.std_error);
  EXPECT_NEAR(r.empirical_advantage, 1 - std::exp(-0.5), 3 * r.std_error);
}

TEST(AuditTest, IdenticalInputsGiveNoAdvantage) {
  const std::vector<double> d = {1, 0, 1};
  const AuditReport r = AuditAdvantage(LaplaceCountTarget(1.0), d, d, 20000, 3);
  EXPECT_LE(r.empirical_advantage, 3 * r.std_error);
  const AuditReport t = AuditAdvantage(PdpCountTarget({1, 1, 1}, 1), d, d, 20000, 3);
  EXPECT_LE(t.empirical_advantage, 3 * t.std_error);
}

TEST(AuditTest, RejectsBadGames) {
  const std::vector<double> d0 = {1, 0, 1}, far = {0, 1, 0};
  EXPECT_THROW(AuditAdvantage(LaplaceCountTarget(1), d0, far, 5000, 1), ArgumentError);
  EXPECT_THROW(AuditAdvantage(LaplaceCountTarget(1), d0, d0, 999, 1), ArgumentError);
  EXPECT_TRUE(Adjacent(d0, std::vector<double>{1, 0, 1, 1}));
  EXPECT_TRUE(Adjacent(d0, std::vector<double>{1, 1, 1}));
  EXPECT_FALSE(Adjacent(d0, far));
}

TEST(AuditTest, BoundHoldsAcrossSeededAudits) {
  // Randomized response meets its bound with equality, so a small audit
  // is skewed near p = 1 and its plug-in error is too narrow; 20000
  // trials keep the normal approximation sound at eps = 5.
  const std::vector<double> d0 = {1, 0, 1, 0}, d1 = {1, 1, 1, 0};
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const double eps = 0.5 + 4.5 * static_cast<double>(seed % 10) / 9;
    const AuditReport lap = AuditAdvantage(LaplaceCountTarget(eps), d0, d1, 20000, seed);
    EXPECT_LE(lap.empirical_advantage, lap.theoretical_bound + 3 * lap.std_error) << eps;
    const AuditReport rr = AuditAdvantage(RandomizedResponseTarget(eps), std::vector<double>{0},
                                          std::vector<double>{1}, 20000, seed);
    EXPECT_LE(rr.empirical_advantage, rr.theoretical_bound + 3 * rr.std_error) << eps;
    const AuditReport pdp =
        AuditAdvantage(PdpCountTarget({eps, eps, eps, eps}, eps), d0, d1, 20000, seed);
    EXPECT_LE(pdp.empirical_advantage, pdp.theoretical_bound + 3 * pdp.std_error) << eps;
  }
}

TEST(AuditTest, PersonalisedBudgetBoundsTheDifferingRecord) {
  // Record 1 carries eps = 0.5 under t = 2; the audit must respect 0.5.
  AuditTarget target = PdpCountTarget({2, 0.5, 2, 2}, 2);
  target.epsilon = 0.5;
  const std::vector<double> d0 = {1, 0, 1, 0}, d1 = {1, 1, 1, 0};
  const AuditReport r = AuditAdvantage(target, d0, d1, 20000, 4);
  EXPECT_NEAR(r.theoretical_bound, dpmap::AdversaryAdvantage(0.5), 1e-15);
  EXPECT_LE(r.empirical_advantage, r.theoretical_bound + 3 * r.std_error);
}

TEST(AuditTest, ReportSerialises) {
  const AuditReport r = AuditAdvantage(LaplaceCountTarget(1.0), std::vector<double>{1},
                                       std::vector<double>{0}, 1000, 5);
  const auto j = ToJson(r);
  EXPECT_EQ(j.at("trials").get<std::size_t>(), r.trials);
  EXPECT_EQ(j.at("mechanism").get<std::string>(), "laplace_count");
}

}  // namespace
}  // namespace gazedp::pdp

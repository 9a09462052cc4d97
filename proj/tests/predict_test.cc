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
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/events/features.h"
#include "gazedp/ingest/synth.h"
#include "gazedp/predict/classifiers.h"
#include "gazedp/predict/clustering.h"
#include "gazedp/predict/evaluation.h"
#include "gazedp/predict/metrics.h"
#include "gazedp/predict/task.h"

namespace gazedp::predict {
namespace {

struct Blobs {
  Eigen::MatrixXd X;
  std::vector<int> y;
};

// Gaussian blobs with unit spread; centres sit on a circle of radius `gap`
// in the first two dimensions.
Blobs MakeBlobs(int per_class, int classes, double gap, uint64_t seed, int dims = 2) {
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> normal(0, 1);
  Blobs b{Eigen::MatrixXd(per_class * classes, dims), {}};
  for (int c = 0; c < classes; ++c) {
    const double angle = 2 * std::numbers::pi * c / classes;
    for (int i = 0; i < per_class; ++i) {
      const int r = c * per_class + i;
      for (int j = 0; j < dims; ++j) b.X(r, j) = normal(rng);
      b.X(r, 0) += gap * std::cos(angle);
      b.X(r, 1) += gap * std::sin(angle);
      b.y.push_back(c);
    }
  }
  return b;
}

double Accuracy(const std::vector<int>& truth, const std::vector<int>& predicted) {
  int hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

ModelSpec Spec(ModelKind kind, uint64_t seed = 1) {
  ModelSpec s;
  s.kind = kind;
  s.seed = seed;
  s.n_trees = 30;
  return s;
}

TEST(ClassifierTest, SeparableBlobsAreLearned) {
  const Blobs train = MakeBlobs(100, 2, 12, 1);
  const Blobs test = MakeBlobs(100, 2, 12, 2);
  for (ModelKind kind : AllModelKinds()) {
    const Model m = Train(Spec(kind), train.X, train.y);
    EXPECT_GE(Accuracy(test.y, m.Predict(test.X)), 0.99) << ModelKindName(kind);
  }
}

TEST(ClassifierTest, MulticlassBlobs) {
  const Blobs train = MakeBlobs(60, 4, 10, 3);
  const Blobs test = MakeBlobs(60, 4, 10, 4);
  for (ModelKind kind : AllModelKinds()) {
    const Model m = Train(Spec(kind), train.X, train.y);
    EXPECT_EQ(m.num_classes(), 4);
    EXPECT_GE(Accuracy(test.y, m.Predict(test.X)), 0.95) << ModelKindName(kind);
    const Eigen::MatrixXd s = m.Scores(test.X);
    EXPECT_EQ(s.cols(), 4);
    EXPECT_EQ(s.rows(), test.X.rows());
  }
}

TEST(ClassifierTest, NearestNeighbourMemorises) {
  const Blobs b = MakeBlobs(50, 3, 0.5, 5);
  ModelSpec s = Spec(ModelKind::kKnn);
  s.k_neighbors = 1;
  EXPECT_EQ(Accuracy(b.y, Train(s, b.X, b.y).Predict(b.X)), 1.0);
}

TEST(ClassifierTest, ShuffledLabelsStayNearChance) {
  // 30 independent shuffles of fresh signal-free data; the mean held-out
  // accuracy has sd sqrt(0.25 / 400 / 30).
  constexpr int kShuffles = 30;
  const double three_sigma = 3 * std::sqrt(0.25 / 400 / kShuffles);
  for (ModelKind kind : AllModelKinds()) {
    double sum = 0;
    for (int s = 0; s < kShuffles; ++s) {
      Blobs train = MakeBlobs(200, 2, 0, 100 + 2 * s, 5);
      const Blobs test = MakeBlobs(200, 2, 0, 101 + 2 * s, 5);
      Rng rng = MakeRng(static_cast<uint64_t>(s));
      std::shuffle(train.y.begin(), train.y.end(), rng);
      sum += Accuracy(test.y, Train(Spec(kind, s), train.X, train.y).Predict(test.X));
    }
    EXPECT_NEAR(sum / kShuffles, 0.5, three_sigma) << ModelKindName(kind);
  }
}

TEST(ClassifierTest, TrainingErrors) {
  const Blobs b = MakeBlobs(10, 2, 3, 9);
  const std::vector<int> one_class(20, 1);
  EXPECT_THROW(Train(Spec(ModelKind::kLogisticRegression), b.X, one_class), ArgumentError);
  Eigen::MatrixXd bad = b.X;
  bad(3, 1) = std::nan("");
  EXPECT_THROW(Train(Spec(ModelKind::kLinearSvm), bad, b.y), ArgumentError);
  EXPECT_THROW(Train(Spec(ModelKind::kKnn), b.X.topRows(19), b.y), ArgumentError);
  ModelSpec zero = Spec(ModelKind::kRandomForest);
  zero.n_trees = 0;
  EXPECT_THROW(Train(zero, b.X, b.y), ArgumentError);
  const Model m = Train(Spec(ModelKind::kDecisionTree), b.X, b.y);
  EXPECT_THROW(m.Predict(Eigen::MatrixXd::Zero(2, 3)), ArgumentError);
}

TEST(ClassifierTest, ConstantModelPredictsMajority) {
  const Blobs b = MakeBlobs(10, 2, 3, 10);
  const std::vector<int> y = {2, 2, 2, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
  const Model m = TrainConstant(Spec(ModelKind::kKnn), b.X, y, 3);
  EXPECT_TRUE(m.constant());
  for (int p : m.Predict(b.X)) EXPECT_EQ(p, 2);
}

TEST(ClassifierTest, JsonRoundTripPredictsIdentically) {
  const Blobs train = MakeBlobs(40, 3, 2, 11);
  const Blobs test = MakeBlobs(40, 3, 2, 12);
  for (ModelKind kind : AllModelKinds()) {
    const Model m = Train(Spec(kind), train.X, train.y);
    const Model back = Model::FromJson(nlohmann::json::parse(m.ToJson().dump()));
    EXPECT_EQ(back.Predict(test.X), m.Predict(test.X)) << ModelKindName(kind);
    EXPECT_TRUE(back.Scores(test.X).isApprox(m.Scores(test.X), 1e-12)) << ModelKindName(kind);
  }
  nlohmann::json wrong = Train(Spec(ModelKind::kKnn), train.X, train.y).ToJson();
  wrong["format"] = "other/9";
  EXPECT_THROW(Model::FromJson(wrong), ArgumentError);
}

TEST(ClassifierTest, SeededTrainingIsDeterministic) {
  const Blobs b = MakeBlobs(40, 2, 1, 13);
  const ModelSpec s = Spec(ModelKind::kRandomForest, 4);
  EXPECT_EQ(Train(s, b.X, b.y).ToJson().dump(), Train(s, b.X, b.y).ToJson().dump());
}

TEST(ConfusionTest, Invariants) {
  Confusion c(3);
  const std::vector<int> truth = {0, 0, 1, 1, 1, 2, 2, 0};
  const std::vector<int> pred = {0, 1, 1, 1, 2, 2, 0, 0};
  c.Add(truth, pred);
  EXPECT_EQ(c.Total(), 8);
  EXPECT_EQ(c.Trace(), 5);
  EXPECT_DOUBLE_EQ(c.Accuracy(), 5.0 / 8);
  EXPECT_EQ(c.Support(0) + c.Support(1) + c.Support(2), 8);
  EXPECT_DOUBLE_EQ(c.Recall(1), 2.0 / 3);
  EXPECT_DOUBLE_EQ(c.Precision(0), 2.0 / 3);
  EXPECT_DOUBLE_EQ(Confusion(2).Accuracy(), 0);
  EXPECT_THROW(c.Add(3, 0), ArgumentError);
}

TEST(AveragePrecisionTest, HandValues) {
  // Ranking P N P: precision at hits 1 and 2/3.
  const std::vector<double> scores = {0.9, 0.8, 0.7};
  const bool pos[] = {true, false, true};
  EXPECT_NEAR(AveragePrecision(scores, pos), (1 + 2.0 / 3) / 2, 1e-12);
}

TEST(AveragePrecisionTest, PositivesRankedFirstGiveOne) {
  const double scores[] = {0.1, 0.9, 0.8, 0.3, 0.7};
  const bool pos[] = {false, true, true, false, true};
  EXPECT_DOUBLE_EQ(AveragePrecision(scores, pos), 1.0);
  const bool none[] = {false, false, false, false, false};
  EXPECT_THROW(AveragePrecision(scores, none), ArgumentError);
}

TEST(ClassMapTest, PerfectScoresGiveOne) {
  const std::vector<int> y = {0, 1, 2, 1, 0, 2};
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6, 3);
  for (int i = 0; i < 6; ++i) s(i, y[static_cast<std::size_t>(i)]) = 1;
  EXPECT_DOUBLE_EQ(ClassMeanAveragePrecision(s, y).value, 1.0);
}

TEST(ClassMapTest, RandomScoresApproachThePrior) {
  Rng rng = MakeRng(14);
  const int n = 20000;
  std::vector<int> y(n);
  Eigen::MatrixXd s(n, 4);
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 4);
    for (int c = 0; c < 4; ++c) s(i, c) = UniformUnit(rng);
  }
  EXPECT_NEAR(ClassMeanAveragePrecision(s, y).value, 0.25, 0.02);
}

TEST(ClassMapTest, ClassesWithoutPositivesAreExcluded) {
  const std::vector<int> y = {0, 0, 2, 2};
  Eigen::MatrixXd s(4, 3);
  s << 0.9, 0.5, 0.1, 0.8, 0.5, 0.2, 0.1, 0.5, 0.9, 0.2, 0.5, 0.8;
  const CMapResult r = ClassMeanAveragePrecision(s, y);
  EXPECT_EQ(r.excluded, std::vector<int>{1});
  EXPECT_TRUE(std::isnan(r.per_class[1]));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(KMeansTest, RecoversBlobs) {
  const Blobs b = MakeBlobs(50, 3, 15, 15);
  const ClusterAssignment a = KMeans(b.X, 3, 1);
  // Each true blob maps to one cluster and the map is a bijection.
  std::set<int> used;
  for (int c = 0; c < 3; ++c) {
    std::set<int> labels(a.labels.begin() + c * 50, a.labels.begin() + (c + 1) * 50);
    ASSERT_EQ(labels.size(), 1u);
    used.insert(*labels.begin());
  }
  EXPECT_EQ(used.size(), 3u);
}

TEST(KMeansTest, OneClusterPerRowHasZeroInertia) {
  const Blobs b = MakeBlobs(3, 2, 4, 16);
  EXPECT_NEAR(KMeans(b.X, 6, 2).inertia, 0, 1e-12);
}

TEST(KMeansTest, SeededAndValidated) {
  const Blobs b = MakeBlobs(30, 3, 2, 17);
  const ClusterAssignment a = KMeans(b.X, 4, 9), c = KMeans(b.X, 4, 9);
  EXPECT_EQ(a.labels, c.labels);
  EXPECT_EQ(a.inertia, c.inertia);
  EXPECT_THROW(KMeans(b.X, 1, 0), ArgumentError);
  EXPECT_THROW(KMeans(b.X, 91, 0), ArgumentError);
}

// Brute-force silhouette as an oracle.
double SilhouetteOracle(const Eigen::MatrixXd& X, const std::vector<int>& labels) {
  const int n = static_cast<int>(X.rows());
  double total = 0;
  for (int i = 0; i < n; ++i) {
    std::map<int, std::pair<double, int>> by;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      auto& e = by[labels[static_cast<std::size_t>(j)]];
      e.first += (X.row(i) - X.row(j)).norm();
      e.second += 1;
    }
    const int own = labels[static_cast<std::size_t>(i)];
    if (!by.contains(own)) continue;  // singleton scores 0
    const double a = by[own].first / by[own].second;
    double b = INFINITY;
    for (const auto& [c, e] : by) {
      if (c != own) b = std::min(b, e.first / e.second);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / n;
}

TEST(SilhouetteTest, MatchesBruteForceAndBounds) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Blobs b = MakeBlobs(15, 3, 1.5, 20 + seed);
    const ClusterAssignment a = KMeans(b.X, 3, seed);
    const double s = Silhouette(b.X, a.labels);
    EXPECT_NEAR(s, SilhouetteOracle(b.X, a.labels), 1e-12);
    EXPECT_GE(s, -1);
    EXPECT_LE(s, 1);
  }
  const Blobs far = MakeBlobs(30, 2, 40, 25);
  EXPECT_GT(Silhouette(far.X, far.y), 0.9);
  EXPECT_THROW(Silhouette(far.X, std::vector<int>(60, 0)), ArgumentError);
}

TEST(SilhouetteTest, SingletonsScoreZero) {
  Eigen::MatrixXd X(3, 1);
  X << 0, 1, 5;
  EXPECT_DOUBLE_EQ(Silhouette(X, std::vector<int>{0, 1, 2}), 0.0);
  // Point 2 is a singleton; points 0 and 1 share a cluster.
  const double a = 1.0, b0 = 5.0, b1 = 4.0;
  EXPECT_NEAR(Silhouette(X, std::vector<int>{0, 0, 1}),
              ((b0 - a) / b0 + (b1 - a) / b1 + 0) / 3, 1e-12);
}

TEST(SilhouetteTest, RandomSplitOfOneBlobIsPoor) {
  double total = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Blobs b = MakeBlobs(60, 1, 0, 200 + seed);
    Rng rng = MakeRng(seed);
    std::vector<int> labels(60);
    for (int& l : labels) l = static_cast<int>(rng() % 2);
    total += Silhouette(b.X, labels);
  }
  EXPECT_LE(total / 30, 0.1);
}

TEST(ProfileSweepTest, FindsThreeGroups) {
  const Blobs b = MakeBlobs(20, 3, 12, 26);
  const SweepResult r = ProfileSweep(b.X, 2, 6, 3);
  EXPECT_EQ(r.best_k, 3);
  EXPECT_EQ(r.scores.size(), 5u);
  EXPECT_THROW(ProfileSweep(b.X, 4, 3, 3), ArgumentError);
}

LabeledData GroupedData(int participants, int rows_each, double gap, uint64_t seed) {
  const Blobs b = MakeBlobs(participants * rows_each / 2, 2, gap, seed);
  LabeledData d;
  d.X = b.X;
  d.y = b.y;
  d.class_names = {"private", "safe"};
  d.feature_names = {"a", "b"};
  for (std::size_t i = 0; i < b.y.size(); ++i) {
    d.groups.push_back("P" + std::to_string(i % static_cast<std::size_t>(participants)));
    d.trial_index.push_back(i);
  }
  return d;
}

TEST(CrossValidateTest, PersonIndependentScoresEveryRowOnce) {
  const LabeledData d = GroupedData(6, 20, 8, 27);
  TaskSpec task;
  const EvalReport r = CrossValidate(Spec(ModelKind::kLogisticRegression), task, d, 5);
  EXPECT_EQ(r.confusion.Total(), static_cast<long>(d.y.size()));
  EXPECT_TRUE(std::none_of(r.oof_predictions.begin(), r.oof_predictions.end(),
                           [](int p) { return p < 0; }));
  EXPECT_GT(r.accuracy, 0.99);
  EXPECT_FALSE(r.mean_participant_accuracy.has_value());
  EXPECT_DOUBLE_EQ(r.accuracy, r.confusion.Accuracy());
}

TEST(CrossValidateTest, PersonSpecificSkipsSmallParticipants) {
  LabeledData d = GroupedData(4, 20, 8, 28);
  // A fifth participant with three rows cannot fill five folds.
  for (int i = 0; i < 3; ++i) {
    d.X.conservativeResize(d.X.rows() + 1, Eigen::NoChange);
    d.X.row(d.X.rows() - 1) << 0.1 * i, 0.2;
    d.y.push_back(i % 2);
    d.groups.push_back("P9");
    d.trial_index.push_back(d.trial_index.size());
  }
  TaskSpec task;
  task.split = SplitKind::kPersonSpecific;
  const EvalReport r = CrossValidate(Spec(ModelKind::kKnn), task, d, 5);
  EXPECT_EQ(r.skipped_participants, std::vector<std::string>{"P9"});
  EXPECT_EQ(r.confusion.Total(), 80);
  ASSERT_TRUE(r.mean_participant_accuracy.has_value());
  EXPECT_GT(*r.mean_participant_accuracy, 0.95);
}

TEST(CrossValidateTest, DeterministicAndValidated) {
  const LabeledData d = GroupedData(5, 16, 1, 29);
  TaskSpec task;
  const ModelSpec m = Spec(ModelKind::kRandomForest, 5);
  EXPECT_EQ(ToJson(CrossValidate(m, task, d, 4)).dump(),
            ToJson(CrossValidate(m, task, d, 4)).dump());
  EXPECT_THROW(CrossValidate(m, task, d, 1), ArgumentError);
  task.split = SplitKind::kPersonSpecific;
  EXPECT_THROW(CrossValidate(m, task, d, 40), ArgumentError);
}

TEST(TaskDataTest, BinaryTaskDropsNeutralRatings) {
  ingest::SynthSpec spec;
  spec.n_participants = 4;
  spec.n_trials_per_participant = 30;
  spec.mean_viewing_ms = 500;
  spec.seed = 3;
  const ingest::Dataset d = ingest::SynthesizeDataset(spec);
  const auto features = events::ExtractAll(d);
  TaskSpec task;
  const LabeledData data = BuildTaskData(task, d, features);
  EXPECT_EQ(data.num_classes(), 2);
  EXPECT_EQ(data.y.size(), data.groups.size());
  for (std::size_t i = 0; i < data.y.size(); ++i) {
    const int l = d.trials[data.trial_index[i]].rating_l;
    EXPECT_TRUE(l <= 3 || l >= 5) << l;
    EXPECT_EQ(data.y[i], l >= 5 ? 1 : 0) << data.class_names[1];
  }
  task.task = TaskKind::kLevelPrivacy;
  EXPECT_EQ(BuildTaskData(task, d, features).num_classes(), 7);
  EXPECT_THROW(BuildTaskData(task, d, {}), ArgumentError);
}

}  // namespace
}  // namespace gazedp::predict

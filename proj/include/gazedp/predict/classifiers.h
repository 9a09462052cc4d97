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

#ifndef GAZEDP_PREDICT_CLASSIFIERS_H_
#define GAZEDP_PREDICT_CLASSIFIERS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace gazedp::predict {

enum class ModelKind {
  kDecisionTree,
  kLinearSvm,
  kLogisticRegression,
  kRandomForest,
  kKnn,
};

std::string_view ModelKindName(ModelKind kind);
std::optional<ModelKind> ModelKindFromName(std::string_view name);
std::vector<ModelKind> AllModelKinds();

struct ModelSpec {
  ModelKind kind = ModelKind::kLogisticRegression;
  int max_depth = 8;           // decision tree, random forest
  int n_trees = 100;           // random forest
  int k_neighbors = 5;         // knn
  int epochs = 200;            // logistic regression, linear svm
  double learning_rate = 0.1;  // logistic regression
  double l2 = 1e-4;            // logistic regression
  double svm_c = 1.0;          // linear svm; lambda = 1 / (C n)
  uint64_t seed = 0;
};

// Throws ArgumentError for nonpositive hyperparameters.
void CheckModelSpec(const ModelSpec& spec);
nlohmann::json ModelSpecToJson(const ModelSpec& spec);
ModelSpec ModelSpecFromJson(const nlohmann::json& j);

inline constexpr std::string_view kModelFormat = "gazedp-model/1";

class Estimator;

// A trained classifier: z-score standardiser fit on the training rows plus
// one estimator. Immutable and cheap to copy.
class Model {
 public:
  const ModelSpec& spec() const { return spec_; }
  int num_classes() const { return num_classes_; }
  // True when training saw a single class and fell back to a constant.
  bool constant() const;

  // Per-class scores, rows x num_classes; higher means more likely.
  Eigen::MatrixXd Scores(const Eigen::MatrixXd& X) const;
  // Arg-max of Scores, lowest class index on ties.
  std::vector<int> Predict(const Eigen::MatrixXd& X) const;

  nlohmann::json ToJson() const;
  static Model FromJson(const nlohmann::json& j);

 private:
  friend Model Train(const ModelSpec&, const Eigen::MatrixXd&,
                     std::span<const int>, int);
  friend Model TrainConstant(const ModelSpec&, const Eigen::MatrixXd&,
                             std::span<const int>, int);

  ModelSpec spec_;
  int num_classes_ = 0;
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;
  std::shared_ptr<const Estimator> estimator_;
};

// Trains on rows of X with labels in [0, num_classes). num_classes = 0
// infers max(y) + 1. Deterministic given spec.seed. Throws ArgumentError on
// shape mismatch, non-finite features, labels out of range or fewer than
// two distinct classes in y.
Model Train(const ModelSpec& spec, const Eigen::MatrixXd& X,
            std::span<const int> y, int num_classes = 0);

// Majority-class predictor; used when a training fold holds one class.
Model TrainConstant(const ModelSpec& spec, const Eigen::MatrixXd& X,
                    std::span<const int> y, int num_classes);

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_CLASSIFIERS_H_

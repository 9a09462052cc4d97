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

#include "gazedp/predict/classifiers.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/predict/decision_tree.h"

namespace gazedp::predict {

// Scores standardised rows. Implementations live below.
class Estimator {
 public:
  virtual ~Estimator() = default;
  virtual Eigen::MatrixXd Scores(const Eigen::MatrixXd& Z,
                                 int num_classes) const = 0;
  virtual nlohmann::json ToJson() const = 0;
  virtual bool constant() const { return false; }
};

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 5> kModelNames{{
    {ModelKind::kDecisionTree, "decision_tree"},
    {ModelKind::kLinearSvm, "linear_svm"},
    {ModelKind::kLogisticRegression, "logistic_regression"},
    {ModelKind::kRandomForest, "random_forest"},
    {ModelKind::kKnn, "knn"},
}};

Eigen::MatrixXd MatrixFromJson(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ArgumentError("matrix JSON has the wrong number of entries");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
    }
  }
  return m;
}

nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

class ConstantEstimator : public Estimator {
 public:
  explicit ConstantEstimator(std::vector<double> prior)
      : prior_(std::move(prior)) {}

  Eigen::MatrixXd Scores(const Eigen::MatrixXd& Z, int) const override {
    Eigen::MatrixXd s(Z.rows(), static_cast<Eigen::Index>(prior_.size()));
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
      s.col(c).setConstant(prior_[static_cast<std::size_t>(c)]);
    }
    return s;
  }
  nlohmann::json ToJson() const override {
    return {{"type", "constant"}, {"prior", prior_}};
  }
  bool constant() const override { return true; }

 private:
  std::vector<double> prior_;
};

// One-vs-rest linear scores W z + b. Logistic outputs pass through the
// sigmoid; SVM outputs are raw margins.
class LinearEstimator : public Estimator {
 public:
  LinearEstimator(Eigen::MatrixXd W, Eigen::VectorXd b, bool logistic)
      : W_(std::move(W)), b_(std::move(b)), logistic_(logistic) {}

  Eigen::MatrixXd Scores(const Eigen::MatrixXd& Z, int) const override {
    Eigen::MatrixXd s = Z * W_.transpose();
    s.rowwise() += b_.transpose();
    if (logistic_) s = (1.0 / (1.0 + (-s.array()).exp())).matrix();
    return s;
  }
  nlohmann::json ToJson() const override {
    return {{"type", logistic_ ? "logistic" : "linear_svm"},
            {"W", MatrixToJson(W_)},
            {"b", std::vector<double>(b_.data(), b_.data() + b_.size())}};
  }

 private:
  Eigen::MatrixXd W_;
  Eigen::VectorXd b_;
  bool logistic_;
};

class ForestEstimator : public Estimator {
 public:
  explicit ForestEstimator(std::vector<DecisionTree> trees, bool single)
      : trees_(std::move(trees)), single_(single) {}

  Eigen::MatrixXd Scores(const Eigen::MatrixXd& Z,
                         int num_classes) const override {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(Z.rows(), num_classes);
    for (Eigen::Index r = 0; r < Z.rows(); ++r) {
      for (const DecisionTree& t : trees_) {
        const std::vector<double>& leaf = t.Leaf(Z.row(r));
        for (int c = 0; c < num_classes; ++c) {
          s(r, c) += leaf[static_cast<std::size_t>(c)];
        }
      }
    }
    return s / static_cast<double>(trees_.size());
  }
  nlohmann::json ToJson() const override {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.ToJson());
    return {{"type", single_ ? "tree" : "forest"}, {"trees", trees}};
  }

 private:
  std::vector<DecisionTree> trees_;
  bool single_;
};

class KnnEstimator : public Estimator {
 public:
  KnnEstimator(Eigen::MatrixXd Z, std::vector<int> y, int k)
      : Z_(std::move(Z)), y_(std::move(y)), k_(k) {}

  // Votes among the k nearest rows (distance ties by training order), plus
  // a tiny rank bonus so the class of nearer neighbours wins vote ties.
  Eigen::MatrixXd Scores(const Eigen::MatrixXd& Q,
                         int num_classes) const override {
    const auto n = static_cast<std::size_t>(Z_.rows());
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(Q.rows(), num_classes);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (Eigen::Index r = 0; r < Q.rows(); ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        dist[i] = {(Z_.row(static_cast<Eigen::Index>(i)) - Q.row(r)).squaredNorm(), i};
      }
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                        dist.end());
      for (std::size_t j = 0; j < k; ++j) {
        s(r, y_[dist[j].second]) +=
            1.0 + 1e-6 * static_cast<double>(k - j) / static_cast<double>(k);
      }
    }
    return s / static_cast<double>(k);
  }
  nlohmann::json ToJson() const override {
    return {{"type", "knn"}, {"k", k_}, {"Z", MatrixToJson(Z_)}, {"y", y_}};
  }

 private:
  Eigen::MatrixXd Z_;
  std::vector<int> y_;
  int k_;
};

Eigen::MatrixXd OneHot(std::span<const int> y, int num_classes) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(y.size()),
                                            num_classes);
  for (std::size_t i = 0; i < y.size(); ++i) {
    T(static_cast<Eigen::Index>(i), y[i]) = 1;
  }
  return T;
}

std::shared_ptr<const Estimator> FitLogistic(const ModelSpec& spec,
                                             const Eigen::MatrixXd& Z,
                                             std::span<const int> y,
                                             int num_classes) {
  const Eigen::MatrixXd T = OneHot(y, num_classes);
  const double n = static_cast<double>(Z.rows());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(num_classes, Z.cols());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(num_classes);
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    Eigen::MatrixXd S = Z * W.transpose();
    S.rowwise() += b.transpose();
    const Eigen::MatrixXd P = (1.0 / (1.0 + (-S.array()).exp())).matrix();
    const Eigen::MatrixXd E = P - T;
    W -= spec.learning_rate * ((E.transpose() * Z) / n + spec.l2 * W);
    b -= spec.learning_rate * (E.colwise().sum().transpose() / n);
  }
  return std::make_shared<LinearEstimator>(std::move(W), std::move(b), true);
}

// Pegasos on the bias-augmented rows, one binary problem per class; the
// returned weights average the iterates of the second half of training.
std::shared_ptr<const Estimator> FitSvm(const ModelSpec& spec,
                                        const Eigen::MatrixXd& Z,
                                        std::span<const int> y,
                                        int num_classes) {
  const Eigen::Index n = Z.rows();
  const Eigen::Index d = Z.cols();
  const double lambda = 1.0 / (spec.svm_c * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);
  Eigen::MatrixXd W(num_classes, d);
  Eigen::VectorXd b(num_classes);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (int c = 0; c < num_classes; ++c) {
    Rng rng = MakeRng(DeriveSeed(spec.seed, static_cast<uint64_t>(c)));
    std::iota(order.begin(), order.end(), 0);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(d + 1);
    double averaged = 0;
    uint64_t t = 0;
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (Eigen::Index i : order) {
        ++t;
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        const double label = y[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
        const double margin = label * (Z.row(i).dot(w.head(d)) + w(d));
        w *= 1 - eta * lambda;
        if (margin < 1) {
          w.head(d) += eta * label * Z.row(i).transpose();
          w(d) += eta * label;
        }
        const double norm = w.norm();
        if (norm > radius) w *= radius / norm;
      }
      if (2 * epoch >= spec.epochs) {
        avg += w;
        averaged += 1;
      }
    }
    if (averaged > 0) avg /= averaged;
    W.row(c) = avg.head(d).transpose();
    b(c) = avg(d);
  }
  return std::make_shared<LinearEstimator>(std::move(W), std::move(b), false);
}

std::shared_ptr<const Estimator> FitForest(const ModelSpec& spec,
                                           const Eigen::MatrixXd& Z,
                                           std::span<const int> y,
                                           int num_classes, bool single) {
  const int n = static_cast<int>(Z.rows());
  std::vector<DecisionTree> trees;
  if (single) {
    std::vector<int> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    trees.push_back(DecisionTree::Fit(
        Z, y, rows, num_classes, {spec.max_depth, 2, 0, spec.seed}));
  } else {
    const int mtry = std::max(
        1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(Z.cols())))));
    for (int k = 0; k < spec.n_trees; ++k) {
      const uint64_t seed = DeriveSeed(spec.seed, static_cast<uint64_t>(k));
      Rng rng = MakeRng(DeriveSeed(seed, "bootstrap"));
      std::uniform_int_distribution<int> pick(0, n - 1);
      std::vector<int> rows(static_cast<std::size_t>(n));
      for (int& r : rows) r = pick(rng);
      trees.push_back(DecisionTree::Fit(Z, y, rows, num_classes,
                                        {spec.max_depth, 2, mtry, seed}));
    }
  }
  return std::make_shared<ForestEstimator>(std::move(trees), single);
}

void CheckTrainingData(const Eigen::MatrixXd& X, std::span<const int> y,
                       int num_classes) {
  if (X.rows() == 0) throw ArgumentError("training set is empty");
  if (static_cast<Eigen::Index>(y.size()) != X.rows()) {
    throw ArgumentError("X rows and y length differ");
  }
  if (!X.allFinite()) throw ArgumentError("features contain NaN or infinity");
  for (int label : y) {
    if (label < 0 || label >= num_classes) {
      throw ArgumentError("label " + std::to_string(label) + " out of range");
    }
  }
}

int InferClasses(std::span<const int> y, int num_classes) {
  if (num_classes > 0) return num_classes;
  int top = 0;
  for (int label : y) top = std::max(top, label);
  return top + 1;
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  for (const auto& [k, n] : kModelNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

std::optional<ModelKind> ModelKindFromName(std::string_view name) {
  for (const auto& [k, n] : kModelNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::vector<ModelKind> AllModelKinds() {
  std::vector<ModelKind> kinds;
  for (const auto& [k, n] : kModelNames) kinds.push_back(k);
  return kinds;
}

void CheckModelSpec(const ModelSpec& spec) {
  if (spec.max_depth < 1 || spec.n_trees < 1 || spec.k_neighbors < 1 ||
      spec.epochs < 1 || !(spec.learning_rate > 0) || !(spec.l2 >= 0) ||
      !(spec.svm_c > 0)) {
    throw ArgumentError("model hyperparameters must be positive");
  }
}

nlohmann::json ModelSpecToJson(const ModelSpec& spec) {
  return {{"kind", ModelKindName(spec.kind)},
          {"max_depth", spec.max_depth},
          {"n_trees", spec.n_trees},
          {"k_neighbors", spec.k_neighbors},
          {"epochs", spec.epochs},
          {"learning_rate", spec.learning_rate},
          {"l2", spec.l2},
          {"svm_c", spec.svm_c},
          {"seed", spec.seed}};
}

ModelSpec ModelSpecFromJson(const nlohmann::json& j) {
  ModelSpec spec;
  if (j.contains("kind")) {
    const auto name = j.at("kind").get<std::string>();
    const auto kind = ModelKindFromName(name);
    if (!kind) throw ArgumentError("unknown model kind: " + name);
    spec.kind = *kind;
  }
  spec.max_depth = j.value("max_depth", spec.max_depth);
  spec.n_trees = j.value("n_trees", spec.n_trees);
  spec.k_neighbors = j.value("k_neighbors", spec.k_neighbors);
  spec.epochs = j.value("epochs", spec.epochs);
  spec.learning_rate = j.value("learning_rate", spec.learning_rate);
  spec.l2 = j.value("l2", spec.l2);
  spec.svm_c = j.value("svm_c", spec.svm_c);
  spec.seed = j.value("seed", spec.seed);
  CheckModelSpec(spec);
  return spec;
}

bool Model::constant() const { return estimator_ && estimator_->constant(); }

Eigen::MatrixXd Model::Scores(const Eigen::MatrixXd& X) const {
  if (!estimator_) throw ArgumentError("model is not trained");
  if (X.cols() != mean_.size()) {
    throw ArgumentError("feature count does not match the trained model");
  }
  if (!X.allFinite()) throw ArgumentError("features contain NaN or infinity");
  Eigen::MatrixXd Z = X;
  Z.rowwise() -= mean_;
  Z.array().rowwise() /= scale_.array();
  return estimator_->Scores(Z, num_classes_);
}

std::vector<int> Model::Predict(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd s = Scores(X);
  std::vector<int> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < s.cols(); ++c) {
      if (s(r, c) > s(r, best)) best = c;
    }
    out[static_cast<std::size_t>(r)] = static_cast<int>(best);
  }
  return out;
}

nlohmann::json Model::ToJson() const {
  if (!estimator_) throw ArgumentError("model is not trained");
  return {{"format", kModelFormat},
          {"spec", ModelSpecToJson(spec_)},
          {"num_classes", num_classes_},
          {"mean", std::vector<double>(mean_.data(), mean_.data() + mean_.size())},
          {"scale",
           std::vector<double>(scale_.data(), scale_.data() + scale_.size())},
          {"estimator", estimator_->ToJson()}};
}

Model Model::FromJson(const nlohmann::json& j) {
  if (j.value("format", std::string()) != kModelFormat) {
    throw ArgumentError("unsupported model format; expected " +
                        std::string(kModelFormat));
  }
  Model m;
  m.spec_ = ModelSpecFromJson(j.at("spec"));
  m.num_classes_ = j.at("num_classes").get<int>();
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto scale = j.at("scale").get<std::vector<double>>();
  if (mean.size() != scale.size()) throw ArgumentError("standardiser mismatch");
  m.mean_ = Eigen::Map<const Eigen::RowVectorXd>(mean.data(),
                                                 static_cast<Eigen::Index>(mean.size()));
  m.scale_ = Eigen::Map<const Eigen::RowVectorXd>(
      scale.data(), static_cast<Eigen::Index>(scale.size()));
  const nlohmann::json& e = j.at("estimator");
  const auto type = e.at("type").get<std::string>();
  if (type == "constant") {
    m.estimator_ = std::make_shared<ConstantEstimator>(
        e.at("prior").get<std::vector<double>>());
  } else if (type == "logistic" || type == "linear_svm") {
    const auto b = e.at("b").get<std::vector<double>>();
    m.estimator_ = std::make_shared<LinearEstimator>(
        MatrixFromJson(e.at("W")),
        Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())),
        type == "logistic");
  } else if (type == "tree" || type == "forest") {
    std::vector<DecisionTree> trees;
    for (const auto& t : e.at("trees")) trees.push_back(DecisionTree::FromJson(t));
    m.estimator_ = std::make_shared<ForestEstimator>(std::move(trees), type == "tree");
  } else if (type == "knn") {
    m.estimator_ = std::make_shared<KnnEstimator>(
        MatrixFromJson(e.at("Z")), e.at("y").get<std::vector<int>>(),
        e.at("k").get<int>());
  } else {
    throw ArgumentError("unknown estimator type: " + type);
  }
  return m;
}

namespace {

void FitStandardiser(const Eigen::MatrixXd& X, Eigen::RowVectorXd& mean,
                     Eigen::RowVectorXd& scale) {
  mean = X.colwise().mean();
  scale.resize(X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    const double var = (X.col(c).array() - mean(c)).square().mean();
    scale(c) = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
}

}  // namespace

Model TrainConstant(const ModelSpec& spec, const Eigen::MatrixXd& X,
                    std::span<const int> y, int num_classes) {
  num_classes = InferClasses(y, num_classes);
  CheckTrainingData(X, y, num_classes);
  Model m;
  m.spec_ = spec;
  m.num_classes_ = num_classes;
  FitStandardiser(X, m.mean_, m.scale_);
  std::vector<double> prior(static_cast<std::size_t>(num_classes), 0.0);
  for (int label : y) prior[static_cast<std::size_t>(label)] += 1;
  for (double& p : prior) p /= static_cast<double>(y.size());
  m.estimator_ = std::make_shared<ConstantEstimator>(std::move(prior));
  return m;
}

Model Train(const ModelSpec& spec, const Eigen::MatrixXd& X,
            std::span<const int> y, int num_classes) {
  CheckModelSpec(spec);
  num_classes = InferClasses(y, num_classes);
  CheckTrainingData(X, y, num_classes);
  std::vector<int> distinct(y.begin(), y.end());
  std::sort(distinct.begin(), distinct.end());
  if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2) {
    throw ArgumentError("training labels contain a single class");
  }

  Model m;
  m.spec_ = spec;
  m.num_classes_ = num_classes;
  FitStandardiser(X, m.mean_, m.scale_);
  Eigen::MatrixXd Z = X;
  Z.rowwise() -= m.mean_;
  Z.array().rowwise() /= m.scale_.array();

  switch (spec.kind) {
    case ModelKind::kLogisticRegression:
      m.estimator_ = FitLogistic(spec, Z, y, num_classes);
      break;
    case ModelKind::kLinearSvm:
      m.estimator_ = FitSvm(spec, Z, y, num_classes);
      break;
    case ModelKind::kDecisionTree:
      m.estimator_ = FitForest(spec, Z, y, num_classes, true);
      break;
    case ModelKind::kRandomForest:
      m.estimator_ = FitForest(spec, Z, y, num_classes, false);
      break;
    case ModelKind::kKnn:
      m.estimator_ = std::make_shared<KnnEstimator>(
          std::move(Z), std::vector<int>(y.begin(), y.end()), spec.k_neighbors);
      break;
  }
  return m;
}

}  // namespace gazedp::predict

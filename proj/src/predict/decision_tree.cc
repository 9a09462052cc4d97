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

#include "gazedp/predict/decision_tree.h"

#include <algorithm>
#include <numeric>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"

namespace gazedp::predict {
namespace {

double Gini(const std::vector<double>& counts, double total) {
  if (total <= 0) return 0;
  double sum = 0;
  for (double c : counts) sum += c * c;
  return 1 - sum / (total * total);
}

}  // namespace

DecisionTree DecisionTree::Fit(const Eigen::MatrixXd& X, std::span<const int> y,
                               std::span<const int> rows, int num_classes,
                               const TreeParams& params) {
  if (rows.empty()) throw ArgumentError("decision tree needs training rows");
  if (params.max_depth < 1) throw ArgumentError("max_depth must be positive");
  DecisionTree tree;
  std::vector<int> r(rows.begin(), rows.end());
  uint64_t state = MixSeed(params.seed);
  tree.Build(X, y, r, 0, num_classes, params, state);
  return tree;
}

int DecisionTree::Build(const Eigen::MatrixXd& X, std::span<const int> y,
                        std::vector<int>& rows, int depth, int num_classes,
                        const TreeParams& params, uint64_t& rng_state) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  std::vector<double> counts(static_cast<std::size_t>(num_classes), 0.0);
  for (int r : rows) counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])] += 1;
  const double n = static_cast<double>(rows.size());
  std::vector<double> dist = counts;
  for (double& c : dist) c /= n;
  nodes_[static_cast<std::size_t>(id)].distribution = dist;

  const double parent_gini = Gini(counts, n);
  if (depth >= params.max_depth || rows.size() < static_cast<std::size_t>(params.min_samples_split) ||
      parent_gini == 0) {
    return id;
  }

  const int d = static_cast<int>(X.cols());
  std::vector<int> features(static_cast<std::size_t>(d));
  std::iota(features.begin(), features.end(), 0);
  if (params.max_features > 0 && params.max_features < d) {
    rng_state = MixSeed(rng_state);
    Rng rng(rng_state);
    std::shuffle(features.begin(), features.end(), rng);
    features.resize(static_cast<std::size_t>(params.max_features));
    std::sort(features.begin(), features.end());
  }

  int best_feature = -1;
  double best_threshold = 0;
  double best_impurity = parent_gini - 1e-12;
  std::vector<std::pair<double, int>> order(rows.size());
  for (int f : features) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      order[i] = {X(rows[i], f), y[static_cast<std::size_t>(rows[i])]};
    }
    std::sort(order.begin(), order.end());
    std::vector<double> left(static_cast<std::size_t>(num_classes), 0.0);
    std::vector<double> right = counts;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      left[static_cast<std::size_t>(order[i].second)] += 1;
      right[static_cast<std::size_t>(order[i].second)] -= 1;
      if (order[i].first == order[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = n - nl;
      const double impurity = (nl * Gini(left, nl) + nr * Gini(right, nr)) / n;
      if (impurity < best_impurity) {
        best_impurity = impurity;
        best_feature = f;
        best_threshold = 0.5 * (order[i].first + order[i + 1].first);
      }
    }
  }
  if (best_feature < 0) return id;

  std::vector<int> left_rows, right_rows;
  for (int r : rows) {
    (X(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();
  const int left = Build(X, y, left_rows, depth + 1, num_classes, params, rng_state);
  const int right = Build(X, y, right_rows, depth + 1, num_classes, params, rng_state);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.feature = best_feature;
  node.threshold = best_threshold;
  node.left = left;
  node.right = right;
  return id;
}

const std::vector<double>& DecisionTree::Leaf(
    const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  if (nodes_.empty()) throw ArgumentError("decision tree is empty");
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    i = static_cast<std::size_t>(x(nodes_[i].feature) <= nodes_[i].threshold
                                     ? nodes_[i].left
                                     : nodes_[i].right);
  }
  return nodes_[i].distribution;
}

int DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<std::pair<std::size_t, int>> stack{{0, 0}};
  int best = 0;
  while (!stack.empty()) {
    auto [i, dep] = stack.back();
    stack.pop_back();
    best = std::max(best, dep);
    if (nodes_[i].feature >= 0) {
      stack.push_back({static_cast<std::size_t>(nodes_[i].left), dep + 1});
      stack.push_back({static_cast<std::size_t>(nodes_[i].right), dep + 1});
    }
  }
  return best;
}

nlohmann::json DecisionTree::ToJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& n : nodes_) {
    nodes.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"distribution", n.distribution}});
  }
  return {{"nodes", nodes}};
}

DecisionTree DecisionTree::FromJson(const nlohmann::json& j) {
  DecisionTree tree;
  for (const auto& n : j.at("nodes")) {
    Node node;
    node.feature = n.at("feature").get<int>();
    node.threshold = n.at("threshold").get<double>();
    node.left = n.at("left").get<int>();
    node.right = n.at("right").get<int>();
    node.distribution = n.at("distribution").get<std::vector<double>>();
    tree.nodes_.push_back(std::move(node));
  }
  const int count = static_cast<int>(tree.nodes_.size());
  for (int i = 0; i < count; ++i) {
    const Node& n = tree.nodes_[static_cast<std::size_t>(i)];
    if (n.feature >= 0 && (n.left <= i || n.left >= count || n.right <= i ||
                           n.right >= count)) {
      throw ArgumentError("decision tree JSON has dangling child index");
    }
  }
  return tree;
}

}  // namespace gazedp::predict

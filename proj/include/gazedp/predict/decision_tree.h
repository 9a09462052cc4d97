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

#ifndef GAZEDP_PREDICT_DECISION_TREE_H_
#define GAZEDP_PREDICT_DECISION_TREE_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace gazedp::predict {

struct TreeParams {
  int max_depth = 8;
  int min_samples_split = 2;
  // Features examined per split; 0 means all.
  int max_features = 0;
  uint64_t seed = 0;
};

// CART classification tree with Gini impurity. Leaves store class
// frequencies, which serve as scores.
class DecisionTree {
 public:
  DecisionTree() = default;

  // Rows of X listed in `rows` (duplicates allowed, as in a bootstrap).
  static DecisionTree Fit(const Eigen::MatrixXd& X, std::span<const int> y,
                          std::span<const int> rows, int num_classes,
                          const TreeParams& params);

  // Class frequencies of the leaf reached by x.
  const std::vector<double>& Leaf(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;

  int depth() const;
  std::size_t node_count() const { return nodes_.size(); }

  nlohmann::json ToJson() const;
  static DecisionTree FromJson(const nlohmann::json& j);

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    int left = -1;
    int right = -1;
    std::vector<double> distribution;
  };

  int Build(const Eigen::MatrixXd& X, std::span<const int> y,
            std::vector<int>& rows, int depth, int num_classes,
            const TreeParams& params, uint64_t& rng_state);

  std::vector<Node> nodes_;
};

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_DECISION_TREE_H_

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

#ifndef GAZEDP_PREDICT_METRICS_H_
#define GAZEDP_PREDICT_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace gazedp::predict {

// confusion[true][predicted].
struct Confusion {
  std::vector<std::vector<long>> counts;

  explicit Confusion(int num_classes = 0);
  void Add(int truth, int predicted);
  void Add(std::span<const int> truth, std::span<const int> predicted);
  long Total() const;
  long Trace() const;
  long Support(int c) const;
  double Accuracy() const;  // 0 when empty
  // Undefined ratios (no predictions / no support) are reported as 0.
  double Precision(int c) const;
  double Recall(int c) const;
};

struct CMapResult {
  double value = 0;
  std::vector<double> per_class;  // NaN for excluded classes
  std::vector<int> excluded;      // classes without positives
};

// Average precision of one class: sum over distinct score thresholds of
// (recall increment) x (precision at that threshold); tied scores enter
// together. Throws ArgumentError when there are no positives.
double AveragePrecision(std::span<const double> scores,
                        std::span<const bool> positive);

// Macro average of per-class AP over classes with at least one positive.
// Throws ArgumentError on a shape mismatch or when no class has positives.
CMapResult ClassMeanAveragePrecision(const Eigen::MatrixXd& scores,
                                     std::span<const int> y);

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_METRICS_H_

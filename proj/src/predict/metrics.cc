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

#include "gazedp/predict/metrics.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "gazedp/common/errors.h"

namespace gazedp::predict {

Confusion::Confusion(int num_classes)
    : counts(static_cast<std::size_t>(num_classes),
             std::vector<long>(static_cast<std::size_t>(num_classes), 0)) {}

void Confusion::Add(int truth, int predicted) {
  const int k = static_cast<int>(counts.size());
  if (truth < 0 || truth >= k || predicted < 0 || predicted >= k) {
    throw ArgumentError("confusion label out of range");
  }
  ++counts[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)];
}

void Confusion::Add(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw ArgumentError("truth and prediction lengths differ");
  }
  for (std::size_t i = 0; i < truth.size(); ++i) Add(truth[i], predicted[i]);
}

long Confusion::Total() const {
  long t = 0;
  for (const auto& row : counts) t += std::accumulate(row.begin(), row.end(), 0L);
  return t;
}

long Confusion::Trace() const {
  long t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

long Confusion::Support(int c) const {
  const auto& row = counts.at(static_cast<std::size_t>(c));
  return std::accumulate(row.begin(), row.end(), 0L);
}

double Confusion::Accuracy() const {
  const long total = Total();
  return total == 0 ? 0.0 : static_cast<double>(Trace()) / static_cast<double>(total);
}

double Confusion::Precision(int c) const {
  long predicted = 0;
  for (const auto& row : counts) predicted += row.at(static_cast<std::size_t>(c));
  const long tp = counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
  return predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
}

double Confusion::Recall(int c) const {
  const long support = Support(c);
  const long tp = counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
  return support == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(support);
}

double AveragePrecision(std::span<const double> scores,
                        std::span<const bool> positive) {
  if (scores.size() != positive.size()) {
    throw ArgumentError("scores and labels differ in length");
  }
  const auto total_pos =
      static_cast<double>(std::count(positive.begin(), positive.end(), true));
  if (total_pos == 0) throw ArgumentError("average precision needs a positive");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  double ap = 0, tp = 0, seen = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double group_pos = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      group_pos += positive[order[j]] ? 1 : 0;
      ++j;
    }
    tp += group_pos;
    seen += static_cast<double>(j - i);
    if (group_pos > 0) ap += (group_pos / total_pos) * (tp / seen);
    i = j;
  }
  return ap;
}

CMapResult ClassMeanAveragePrecision(const Eigen::MatrixXd& scores,
                                     std::span<const int> y) {
  if (scores.rows() != static_cast<Eigen::Index>(y.size())) {
    throw ArgumentError("score rows and labels differ in length");
  }
  CMapResult result;
  const auto k = static_cast<int>(scores.cols());
  std::vector<double> column(static_cast<std::size_t>(scores.rows()));
  double sum = 0;
  int used = 0;
  for (int c = 0; c < k; ++c) {
    bool any = false;
    std::unique_ptr<bool[]> pos(new bool[y.size()]);
    for (std::size_t i = 0; i < y.size(); ++i) {
      pos[i] = y[i] == c;
      any = any || pos[i];
      column[i] = scores(static_cast<Eigen::Index>(i), c);
    }
    if (!any) {
      result.per_class.push_back(std::nan(""));
      result.excluded.push_back(c);
      continue;
    }
    const double ap = AveragePrecision(column, std::span<const bool>(pos.get(), y.size()));
    result.per_class.push_back(ap);
    sum += ap;
    ++used;
  }
  if (used == 0) throw ArgumentError("no class has a positive example");
  result.value = sum / used;
  return result;
}

}  // namespace gazedp::predict

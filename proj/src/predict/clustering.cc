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

#include "gazedp/predict/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"

namespace gazedp::predict {
namespace {

int Nearest(const Eigen::MatrixXd& C, const Eigen::RowVectorXd& x, double* dist) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < C.rows(); ++c) {
    const double d = (C.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist) *dist = best_d;
  return best;
}

Eigen::MatrixXd PlusPlusInit(const Eigen::MatrixXd& X, int k, Rng& rng) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd C(k, X.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  C.row(0) = X.row(first(rng));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = 0;
      Nearest(C.topRows(c), X.row(i), &d);
      d2[static_cast<std::size_t>(i)] = d;
      total += d;
    }
    Eigen::Index pick = 0;
    if (total > 0) {
      // Walk the cumulative mass; the last positive-mass point absorbs any
      // rounding left at the end.
      double u = UniformUnit(rng) * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double w = d2[static_cast<std::size_t>(i)];
        if (w <= 0) continue;
        pick = i;
        u -= w;
        if (u < 0) break;
      }
    } else {
      pick = first(rng);
    }
    C.row(c) = X.row(pick);
  }
  return C;
}

}  // namespace

ClusterAssignment KMeans(const Eigen::MatrixXd& X, int k, uint64_t seed,
                         int max_iterations) {
  const Eigen::Index n = X.rows();
  if (k < 2) throw ArgumentError("k must be at least 2");
  if (k > n) throw ArgumentError("k exceeds the number of rows");
  if (!X.allFinite()) throw ArgumentError("features contain NaN or infinity");
  if (max_iterations < 1) throw ArgumentError("max_iterations must be positive");

  Rng rng = MakeRng(seed);
  ClusterAssignment out;
  out.centroids = PlusPlusInit(X, k, rng);
  out.labels.assign(static_cast<std::size_t>(n), -1);

  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = Nearest(out.centroids, X.row(i), nullptr);
      if (c != out.labels[static_cast<std::size_t>(i)]) {
        out.labels[static_cast<std::size_t>(i)] = c;
        changed = true;
      }
    }
    out.iterations = it + 1;
    if (!changed && it > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, X.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = out.labels[static_cast<std::size_t>(i)];
      sums.row(c) += X.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        out.centroids.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        continue;
      }
      // Reseed with the point farthest from its current centroid.
      Eigen::Index far = 0;
      double far_d = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d =
            (X.row(i) - out.centroids.row(out.labels[static_cast<std::size_t>(i)]))
                .squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      out.centroids.row(c) = X.row(far);
      out.labels[static_cast<std::size_t>(far)] = c;
    }
  }

  out.inertia = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.inertia +=
        (X.row(i) - out.centroids.row(out.labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return out;
}

double Silhouette(const Eigen::MatrixXd& X, std::span<const int> labels) {
  const auto n = static_cast<std::size_t>(X.rows());
  if (labels.size() != n) throw ArgumentError("labels and rows differ in length");
  std::map<int, std::size_t> sizes;
  for (int l : labels) ++sizes[l];
  if (sizes.size() < 2) throw ArgumentError("silhouette needs two clusters");

  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] == 1) continue;  // singleton: s = 0
    std::map<int, double> sum;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum[labels[j]] += (X.row(static_cast<Eigen::Index>(i)) -
                         X.row(static_cast<Eigen::Index>(j)))
                            .norm();
    }
    const double a = sum[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [label, size] : sizes) {
      if (label == labels[i]) continue;
      b = std::min(b, sum[label] / static_cast<double>(size));
    }
    const double denom = std::max(a, b);
    total += denom > 0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

SweepResult ProfileSweep(const Eigen::MatrixXd& X, int k_min, int k_max,
                         uint64_t seed) {
  if (k_min > k_max) throw ArgumentError("empty k range");
  if (k_min < 2 || k_max > X.rows() - 1) {
    throw ArgumentError("k range must lie within [2, rows - 1]");
  }
  SweepResult out;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    const ClusterAssignment a =
        KMeans(X, k, DeriveSeed(seed, static_cast<uint64_t>(k)));
    const double s = Silhouette(X, a.labels);
    out.scores.push_back({k, s});
    if (s > best) {
      best = s;
      out.best_k = k;
    }
  }
  return out;
}

ParticipantMatrix ParticipantFeatureMeans(
    const ingest::Dataset& d, const std::vector<events::FeatureVector>& features) {
  if (features.size() != d.trials.size()) {
    throw ArgumentError("need one feature vector per trial");
  }
  constexpr auto kD = events::FeatureVector::kNumGazeFeatures;
  std::map<std::string, std::pair<Eigen::VectorXd, int>> acc;
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    if (!features[i].valid) continue;
    auto& [sum, count] = acc[d.trials[i].participant_id];
    if (sum.size() == 0) sum = Eigen::VectorXd::Zero(kD);
    const auto v = features[i].GazeValues();
    for (std::size_t c = 0; c < kD; ++c) sum(static_cast<Eigen::Index>(c)) += v[c];
    ++count;
  }
  ParticipantMatrix out;
  std::vector<Eigen::VectorXd> rows;
  for (const auto& p : d.profiles) {
    const auto it = acc.find(p.participant_id);
    if (it == acc.end()) continue;
    out.participant_ids.push_back(p.participant_id);
    rows.push_back(it->second.first / it->second.second);
  }
  out.X.resize(static_cast<Eigen::Index>(rows.size()), kD);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.X.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  }
  if (out.X.rows() > 0) {
    const Eigen::RowVectorXd mean = out.X.colwise().mean();
    out.X.rowwise() -= mean;
    for (Eigen::Index c = 0; c < out.X.cols(); ++c) {
      const double sd = std::sqrt(out.X.col(c).squaredNorm() /
                                  static_cast<double>(out.X.rows()));
      if (sd > 1e-12) out.X.col(c) /= sd;
    }
  }
  return out;
}

}  // namespace gazedp::predict

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

#ifndef GAZEDP_PREDICT_CLUSTERING_H_
#define GAZEDP_PREDICT_CLUSTERING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gazedp/events/features.h"
#include "gazedp/ingest/dataset.h"

namespace gazedp::predict {

struct ClusterAssignment {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double inertia = 0;
  int iterations = 0;
};

// Lloyd's algorithm from a seeded k-means++ start; stops when assignments
// stop changing or after max_iterations. An emptied cluster is reseeded
// with the point farthest from its centroid. Throws ArgumentError unless
// 2 <= k <= rows.
ClusterAssignment KMeans(const Eigen::MatrixXd& X, int k, uint64_t seed,
                         int max_iterations = 300);

// Mean silhouette coefficient under Euclidean distance; points in
// singleton clusters contribute 0. Throws ArgumentError for fewer than two
// clusters, empty clusters or mismatched lengths.
double Silhouette(const Eigen::MatrixXd& X, std::span<const int> labels);

struct SweepResult {
  int best_k = 0;
  std::vector<std::pair<int, double>> scores;  // (k, silhouette)
};

// KMeans + Silhouette for every k in [k_min, k_max]; best_k maximises the
// silhouette (first k on ties). Throws ArgumentError for an empty range or
// a range outside [2, rows - 1].
SweepResult ProfileSweep(const Eigen::MatrixXd& X, int k_min, int k_max,
                         uint64_t seed);

// Per-participant mean of the gaze features over valid trials, z-scored
// across participants. Row order follows d.profiles; participants without
// valid trials are left out of both outputs.
struct ParticipantMatrix {
  std::vector<std::string> participant_ids;
  Eigen::MatrixXd X;
};
ParticipantMatrix ParticipantFeatureMeans(
    const ingest::Dataset& d, const std::vector<events::FeatureVector>& features);

}  // namespace gazedp::predict

#endif  // GAZEDP_PREDICT_CLUSTERING_H_

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

#ifndef GAZEDP_PDP_REGRESSION_H_
#define GAZEDP_PDP_REGRESSION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gazedp/pdp/mechanisms.h"

namespace gazedp::pdp {

enum class RegressionStrategy { kWeighting, kSampling };

std::string_view RegressionStrategyName(RegressionStrategy s);
std::optional<RegressionStrategy> RegressionStrategyFromName(
    std::string_view name);

struct RegressionHyper {
  double clip_norm = 1.0;
  int epochs = 100;
  double rate = 0.1;
  // Rows per gradient step; 0 means the full batch.
  int batch_size = 0;
  uint64_t seed = 0;
  bool fit_intercept = true;
  // Skip the Laplace noise; used for the plain baseline and oracle checks.
  bool noiseless = false;
  // Reference budget. Defaults to the largest per-row budget. Weighting
  // requires it to be at least that; sampling treats it as the threshold t.
  std::optional<double> eps_ref;
};

// (Mini-)batch gradient descent on squared loss with per-example clipping.
// Weighting scales row i's clipped gradient by eps_i / eps_ref and divides
// the noisy sum by the batch size; sampling keeps row i in a step with
// probability pi(eps_i, eps_ref) and divides by the batch's expected kept
// count. Each step adds Laplace(clip_norm / eps_ref) noise per coordinate
// to the summed gradient.
//
// Batch order and sampling coins are keyed by row identity (`ids`, default
// the row index), so permuting rows together with their ids and budgets
// gives identical coefficients. Coefficients are the weights followed by
// the intercept.
MechanismResult DpRegression(const Eigen::MatrixXd& X,
                             const Eigen::VectorXd& y,
                             std::span<const double> budgets,
                             RegressionStrategy strategy,
                             const RegressionHyper& hyper,
                             std::span<const uint64_t> ids = {});

// Applies coefficients from DpRegression to rows of X.
Eigen::VectorXd PredictLinear(const Eigen::MatrixXd& X,
                              std::span<const double> coefficients,
                              bool fit_intercept = true);

// Coefficient of determination; 1 - SSE / SST, with SST = 0 giving 0
// unless SSE is also 0.
double RSquared(const Eigen::VectorXd& y, const Eigen::VectorXd& prediction);

}  // namespace gazedp::pdp

#endif  // GAZEDP_PDP_REGRESSION_H_

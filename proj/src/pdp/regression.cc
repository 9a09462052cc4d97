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

#include "gazedp/pdp/regression.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/pdp/sample_mechanism.h"

namespace gazedp::pdp {

std::string_view RegressionStrategyName(RegressionStrategy s) {
  return s == RegressionStrategy::kWeighting ? "weighting" : "sampling";
}

std::optional<RegressionStrategy> RegressionStrategyFromName(
    std::string_view name) {
  if (name == "weighting") return RegressionStrategy::kWeighting;
  if (name == "sampling") return RegressionStrategy::kSampling;
  return std::nullopt;
}

MechanismResult DpRegression(const Eigen::MatrixXd& X,
                             const Eigen::VectorXd& y,
                             std::span<const double> budgets,
                             RegressionStrategy strategy,
                             const RegressionHyper& hyper,
                             std::span<const uint64_t> ids) {
  const Eigen::Index n = X.rows();
  if (n == 0) throw ArgumentError("regression needs at least one row");
  if (y.size() != n || static_cast<Eigen::Index>(budgets.size()) != n) {
    throw ArgumentError("X, y and budgets must have the same number of rows");
  }
  if (!ids.empty() && static_cast<Eigen::Index>(ids.size()) != n) {
    throw ArgumentError("ids must have one entry per row");
  }
  if (!(hyper.clip_norm > 0) || !(hyper.rate > 0) || hyper.epochs < 1 ||
      hyper.batch_size < 0) {
    throw ArgumentError("clip_norm, rate and epochs must be positive");
  }
  if (!X.allFinite() || !y.allFinite()) {
    throw ArgumentError("regression inputs must be finite");
  }
  StaticEpsilon(budgets);  // rejects nonpositive budgets
  const double eps_max = *std::max_element(budgets.begin(), budgets.end());
  const double eps_ref = hyper.eps_ref.value_or(eps_max);
  // Weighting factors must stay in (0, 1]; sampling accepts any threshold,
  // rows at or above it are always kept.
  const bool ref_ok = strategy == RegressionStrategy::kWeighting
                          ? eps_ref >= eps_max
                          : eps_ref > 0;
  if (!ref_ok || !std::isfinite(eps_ref)) {
    throw ArgumentError("eps_ref must be finite, positive, and for weighting at least "
                        "the max budget");
  }

  const Eigen::Index d = X.cols() + (hyper.fit_intercept ? 1 : 0);
  Eigen::MatrixXd A(n, d);
  A.leftCols(X.cols()) = X;
  if (hyper.fit_intercept) A.col(d - 1).setOnes();

  std::vector<double> factor(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = budgets[static_cast<std::size_t>(i)];
    factor[static_cast<std::size_t>(i)] =
        strategy == RegressionStrategy::kWeighting
            ? e / eps_ref
            : SampleInclusionProbability(e, eps_ref);
  }
  std::vector<uint64_t> id(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < id.size(); ++i) {
    id[i] = ids.empty() ? static_cast<uint64_t>(i) : ids[i];
  }
  const auto batch = static_cast<std::size_t>(
      hyper.batch_size > 0 ? std::min<Eigen::Index>(hyper.batch_size, n) : n);

  Rng noise_rng = MakeRng(DeriveSeed(hyper.seed, "noise"));
  const uint64_t order_seed = DeriveSeed(hyper.seed, "order");
  const uint64_t sampling_seed = DeriveSeed(hyper.seed, "sampling");
  const double noise_scale = hyper.clip_norm / eps_ref;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  std::vector<std::pair<uint64_t, std::size_t>> order(static_cast<std::size_t>(n));
  uint64_t step = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    // Visit rows in an order that depends only on (epoch, id).
    const uint64_t epoch_seed = DeriveSeed(order_seed, static_cast<uint64_t>(epoch));
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = {DeriveSeed(epoch_seed, id[i]), i};
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : id[a.second] < id[b.second];
    });
    for (std::size_t start = 0; start < order.size(); start += batch, ++step) {
      const std::size_t stop = std::min(order.size(), start + batch);
      const uint64_t step_seed = DeriveSeed(sampling_seed, step);
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
      double normaliser = 0;
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t row = order[k].second;
        const auto i = static_cast<Eigen::Index>(row);
        double scale = factor[row];
        if (strategy == RegressionStrategy::kSampling) {
          normaliser += factor[row];
          Rng coin = MakeRng(DeriveSeed(step_seed, id[row]));
          if (!(UniformUnit(coin) < factor[row])) continue;
          scale = 1.0;
        } else {
          normaliser += 1.0;
        }
        Eigen::VectorXd g = (A.row(i).dot(w) - y(i)) * A.row(i).transpose();
        const double norm = g.norm();
        if (norm > hyper.clip_norm) g *= hyper.clip_norm / norm;
        sum += scale * g;
      }
      if (!hyper.noiseless) {
        for (Eigen::Index j = 0; j < d; ++j) {
          sum(j) += SampleLaplace(noise_scale, noise_rng);
        }
      }
      w -= hyper.rate * sum / std::max(normaliser, 1.0);
    }
  }

  MechanismResult r;
  r.mechanism = std::string("dp_regression_") +
                std::string(RegressionStrategyName(strategy));
  r.seed = hyper.seed;
  r.coefficients.assign(w.data(), w.data() + w.size());
  r.epsilon_spent.assign(budgets.begin(), budgets.end());
  r.details = {{"clip_norm", hyper.clip_norm}, {"epochs", hyper.epochs},
               {"rate", hyper.rate},           {"eps_ref", eps_ref},
               {"batch_size", hyper.batch_size},
               {"noiseless", hyper.noiseless}, {"fit_intercept", hyper.fit_intercept}};
  return r;
}

Eigen::VectorXd PredictLinear(const Eigen::MatrixXd& X,
                              std::span<const double> coefficients,
                              bool fit_intercept) {
  const Eigen::Index d = X.cols();
  if (static_cast<Eigen::Index>(coefficients.size()) !=
      d + (fit_intercept ? 1 : 0)) {
    throw ArgumentError("coefficient count does not match feature count");
  }
  Eigen::Map<const Eigen::VectorXd> w(coefficients.data(), d);
  Eigen::VectorXd out = X * w;
  if (fit_intercept) out.array() += coefficients.back();
  return out;
}

double RSquared(const Eigen::VectorXd& y, const Eigen::VectorXd& prediction) {
  if (y.size() != prediction.size() || y.size() == 0) {
    throw ArgumentError("R^2 needs equal-length nonempty vectors");
  }
  const double mean = y.mean();
  const double sst = (y.array() - mean).square().sum();
  const double sse = (y - prediction).squaredNorm();
  if (sst == 0) return sse == 0 ? 1.0 : 0.0;
  return 1 - sse / sst;
}

}  // namespace gazedp::pdp

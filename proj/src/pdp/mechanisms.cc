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

#include "gazedp/pdp/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gazedp/common/errors.h"

namespace gazedp::pdp {
namespace {

void CheckPositive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ArgumentError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

nlohmann::json ToJson(const MechanismResult& r) {
  nlohmann::json j = {{"mechanism", r.mechanism},
                      {"seed", r.seed},
                      {"value", r.value},
                      {"epsilon_spent", r.epsilon_spent}};
  if (!r.coefficients.empty()) j["coefficients"] = r.coefficients;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

double SampleLaplace(double scale, Rng& rng) {
  // u in (-1/2, 1/2); the zero draw of UniformUnit maps to -1/2 and is
  // redrawn to keep the log finite.
  double u;
  do {
    u = UniformUnit(rng) - 0.5;
  } while (u == -0.5);
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2 * std::abs(u));
}

MechanismResult LaplaceMechanism(double true_value, double sensitivity,
                                 double eps, uint64_t seed) {
  CheckPositive(sensitivity, "sensitivity");
  CheckPositive(eps, "epsilon");
  Rng rng = MakeRng(seed);
  MechanismResult r;
  r.mechanism = "laplace";
  r.seed = seed;
  r.value = true_value + SampleLaplace(sensitivity / eps, rng);
  r.epsilon_spent = {eps};
  r.details = {{"sensitivity", sensitivity}, {"scale", sensitivity / eps}};
  return r;
}

std::size_t ExponentialMechanismIndex(std::span<const double> quality,
                                      double sensitivity, double eps,
                                      uint64_t seed) {
  if (quality.empty()) {
    throw ArgumentError("exponential mechanism needs at least one candidate");
  }
  CheckPositive(sensitivity, "sensitivity");
  CheckPositive(eps, "epsilon");
  std::vector<double> logw(quality.size());
  for (std::size_t i = 0; i < quality.size(); ++i) {
    if (!std::isfinite(quality[i])) {
      throw ArgumentError("candidate quality must be finite");
    }
    logw[i] = eps * quality[i] / (2 * sensitivity);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> cumulative(logw.size());
  double total = 0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    total += std::exp(logw[i] - top);
    cumulative[i] = total;
  }
  Rng rng = MakeRng(seed);
  const double u = UniformUnit(rng) * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(
      static_cast<std::size_t>(it - cumulative.begin()), quality.size() - 1);
}

bool RandomizedResponse(bool bit, double eps, uint64_t seed) {
  CheckPositive(eps, "epsilon");
  Rng rng = MakeRng(seed);
  // P(truth) = e^eps / (1 + e^eps) = 1 / (1 + e^-eps).
  const bool truthful = UniformUnit(rng) < 1 / (1 + std::exp(-eps));
  return truthful ? bit : !bit;
}

}  // namespace gazedp::pdp

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

#ifndef GAZEDP_PDP_MECHANISMS_H_
#define GAZEDP_PDP_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gazedp/common/seed.h"
#include "json.hpp"

namespace gazedp::pdp {

// Output of a seeded mechanism. `coefficients` is used by learning
// mechanisms; `details` carries mechanism-specific replay parameters.
struct MechanismResult {
  double value = 0;
  std::vector<double> coefficients;
  std::vector<double> epsilon_spent;
  std::string mechanism;
  uint64_t seed = 0;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json ToJson(const MechanismResult& r);

// Zero-mean Laplace draw with the given scale, by inverse CDF.
double SampleLaplace(double scale, Rng& rng);

// true_value + Laplace(sensitivity / eps). Throws ArgumentError when
// sensitivity or eps is not strictly positive and finite.
MechanismResult LaplaceMechanism(double true_value, double sensitivity,
                                 double eps, uint64_t seed);

// Index i sampled with probability proportional to
// exp(eps * quality[i] / (2 * sensitivity)).
std::size_t ExponentialMechanismIndex(std::span<const double> quality,
                                      double sensitivity, double eps,
                                      uint64_t seed);

template <typename T>
const T& ExponentialMechanism(std::span<const T> candidates,
                              const std::function<double(const T&)>& quality,
                              double sensitivity, double eps, uint64_t seed) {
  std::vector<double> q;
  q.reserve(candidates.size());
  for (const T& c : candidates) q.push_back(quality(c));
  return candidates[ExponentialMechanismIndex(q, sensitivity, eps, seed)];
}

// Reports the true bit with probability e^eps / (1 + e^eps).
bool RandomizedResponse(bool bit, double eps, uint64_t seed);

}  // namespace gazedp::pdp

#endif  // GAZEDP_PDP_MECHANISMS_H_

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

#ifndef GAZEDP_PDP_AUDIT_H_
#define GAZEDP_PDP_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace gazedp::pdp {

// A seeded mechanism with one real-valued output, plus the epsilon it
// claims. When `log_density` is set the auditor uses the exact
// likelihood-ratio test; otherwise it calibrates a threshold on half of the
// trials and scores the other half.
struct AuditTarget {
  std::string name;
  double epsilon = 1;
  std::function<double(std::span<const double> data, uint64_t seed)> run;
  std::function<double(double output, std::span<const double> data)>
      log_density;
};

struct AuditReport {
  std::string mechanism;
  double epsilon = 0;
  double empirical_advantage = 0;
  double theoretical_bound = 0;
  std::size_t trials = 0;  // trials scored
  double std_error = 0;
  std::string distinguisher;
  uint64_t seed = 0;
};

nlohmann::json ToJson(const AuditReport& r);

// True when d0 and d1 differ in at most one record: a substitution at one
// position, or one extra record in the longer input.
bool Adjacent(std::span<const double> d0, std::span<const double> d1);

// Runs the distinguishing game: each trial draws b, releases
// run(D_b, seed) and asks the distinguisher for b. empirical_advantage =
// 2 * win_rate - 1 clamped to [0, 1]; std_error = 2 * sqrt(p (1 - p) / n)
// floored at 1 / n. Throws ArgumentError for trials < 1000 or non-adjacent
// inputs.
AuditReport AuditAdvantage(const AuditTarget& target,
                           std::span<const double> d0,
                           std::span<const double> d1, std::size_t trials,
                           uint64_t seed);

// Count of nonzero records plus Laplace(1 / eps); exact density known.
AuditTarget LaplaceCountTarget(double eps);

// Randomized response on the first record (a bit); exact density known.
AuditTarget RandomizedResponseTarget(double eps);

// Sample-mechanism count with per-position budgets and threshold t; audited
// with the threshold distinguisher. Claims eps = t.
AuditTarget PdpCountTarget(std::vector<double> budgets, double t);

}  // namespace gazedp::pdp

#endif  // GAZEDP_PDP_AUDIT_H_

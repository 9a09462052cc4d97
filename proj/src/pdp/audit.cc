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

#include "gazedp/pdp/audit.h"

#include <algorithm>
#include <cmath>

#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/dpmap/advantage.h"
#include "gazedp/pdp/mechanisms.h"
#include "gazedp/pdp/sample_mechanism.h"

namespace gazedp::pdp {
namespace {

struct Sample {
  bool b;
  double output;
  uint64_t seed;
};

double Count(std::span<const double> data) {
  return static_cast<double>(
      std::count_if(data.begin(), data.end(), [](double x) { return x != 0; }));
}

bool CoinFlip(uint64_t seed) {
  Rng rng = MakeRng(DeriveSeed(seed, "tie"));
  return (rng() & 1) != 0;
}

// Best single threshold rule "guess 1 iff output > tau" or its mirror on
// the calibration samples.
struct ThresholdRule {
  double tau = 0;
  bool above_means_one = true;
};

ThresholdRule Calibrate(std::vector<Sample> cal) {
  std::sort(cal.begin(), cal.end(),
            [](const Sample& a, const Sample& b) { return a.output < b.output; });
  const double n1 = static_cast<double>(
      std::count_if(cal.begin(), cal.end(), [](const Sample& s) { return s.b; }));
  const double n = static_cast<double>(cal.size());
  // Start with tau below every output: everything is "above".
  ThresholdRule best{cal.empty() ? 0.0 : cal.front().output - 1, true};
  double ones_below = 0, below = 0;
  double best_score = std::max(n1, n - n1);
  best.above_means_one = n1 >= n - n1;
  for (std::size_t i = 0; i < cal.size(); ++i) {
    below += 1;
    if (cal[i].b) ones_below += 1;
    if (i + 1 < cal.size() && cal[i + 1].output == cal[i].output) continue;
    const double zeros_below = below - ones_below;
    const double ones_above = n1 - ones_below;
    const double zeros_above = (n - n1) - zeros_below;
    const double up = zeros_below + ones_above;  // above => 1
    const double down = ones_below + zeros_above;
    if (std::max(up, down) > best_score) {
      best_score = std::max(up, down);
      best.tau = cal[i].output;
      best.above_means_one = up >= down;
    }
  }
  return best;
}

}  // namespace

nlohmann::json ToJson(const AuditReport& r) {
  return {{"mechanism", r.mechanism},
          {"epsilon", r.epsilon},
          {"empirical_advantage", r.empirical_advantage},
          {"theoretical_bound", r.theoretical_bound},
          {"trials", r.trials},
          {"std_error", r.std_error},
          {"distinguisher", r.distinguisher},
          {"seed", r.seed}};
}

bool Adjacent(std::span<const double> d0, std::span<const double> d1) {
  if (d0.size() == d1.size()) {
    std::size_t diff = 0;
    for (std::size_t i = 0; i < d0.size(); ++i) diff += d0[i] != d1[i];
    return diff <= 1;
  }
  std::span<const double> shorter = d0.size() < d1.size() ? d0 : d1;
  std::span<const double> longer = d0.size() < d1.size() ? d1 : d0;
  if (longer.size() != shorter.size() + 1) return false;
  std::size_t i = 0;
  while (i < shorter.size() && shorter[i] == longer[i]) ++i;
  return std::equal(shorter.begin() + static_cast<std::ptrdiff_t>(i),
                    shorter.end(),
                    longer.begin() + static_cast<std::ptrdiff_t>(i) + 1);
}

AuditReport AuditAdvantage(const AuditTarget& target,
                           std::span<const double> d0,
                           std::span<const double> d1, std::size_t trials,
                           uint64_t seed) {
  if (trials < 1000) throw ArgumentError("audit needs at least 1000 trials");
  if (!target.run) throw ArgumentError("audit target has no mechanism");
  if (!Adjacent(d0, d1)) {
    throw ArgumentError("audit inputs must differ in at most one record");
  }

  std::vector<Sample> samples(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    const uint64_t s = DeriveSeed(seed, static_cast<uint64_t>(i));
    Rng rng = MakeRng(DeriveSeed(s, "bit"));
    const bool b = (rng() & 1) != 0;
    samples[i] = {b, target.run(b ? d1 : d0, DeriveSeed(s, "mechanism")), s};
  }

  AuditReport report;
  report.mechanism = target.name;
  report.epsilon = target.epsilon;
  report.theoretical_bound = dpmap::AdversaryAdvantage(target.epsilon);
  report.seed = seed;

  std::size_t wins = 0, scored = 0;
  if (target.log_density) {
    report.distinguisher = "likelihood_ratio";
    for (const Sample& s : samples) {
      const double l0 = target.log_density(s.output, d0);
      const double l1 = target.log_density(s.output, d1);
      const bool guess = l1 > l0 ? true : l1 < l0 ? false : CoinFlip(s.seed);
      wins += guess == s.b;
    }
    scored = samples.size();
  } else {
    report.distinguisher = "threshold";
    std::vector<Sample> cal, eval;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      (i % 2 == 0 ? cal : eval).push_back(samples[i]);
    }
    const ThresholdRule rule = Calibrate(std::move(cal));
    for (const Sample& s : eval) {
      const bool above = s.output > rule.tau;
      wins += (above == rule.above_means_one) == s.b;
    }
    scored = eval.size();
  }

  const double n = static_cast<double>(scored);
  const double p = static_cast<double>(wins) / n;
  report.trials = scored;
  report.empirical_advantage = std::clamp(2 * p - 1, 0.0, 1.0);
  report.std_error = std::max(2 * std::sqrt(p * (1 - p) / n), 1 / n);
  return report;
}

AuditTarget LaplaceCountTarget(double eps) {
  AuditTarget t;
  t.name = "laplace_count";
  t.epsilon = eps;
  t.run = [eps](std::span<const double> data, uint64_t seed) {
    return LaplaceMechanism(Count(data), 1.0, eps, seed).value;
  };
  t.log_density = [eps](double out, std::span<const double> data) {
    return -eps * std::abs(out - Count(data));
  };
  return t;
}

AuditTarget RandomizedResponseTarget(double eps) {
  AuditTarget t;
  t.name = "randomized_response";
  t.epsilon = eps;
  t.run = [eps](std::span<const double> data, uint64_t seed) {
    const bool bit = !data.empty() && data[0] != 0;
    return RandomizedResponse(bit, eps, seed) ? 1.0 : 0.0;
  };
  t.log_density = [eps](double out, std::span<const double> data) {
    const bool bit = !data.empty() && data[0] != 0;
    const bool truthful = (out != 0) == bit;
    // log P(truthful) = -log1p(e^-eps); log P(lie) = -log1p(e^eps).
    return truthful ? -std::log1p(std::exp(-eps)) : -std::log1p(std::exp(eps));
  };
  return t;
}

AuditTarget PdpCountTarget(std::vector<double> budgets, double t) {
  AuditTarget target;
  target.name = "pdp_count";
  target.epsilon = t;
  target.run = [budgets = std::move(budgets), t](std::span<const double> data,
                                                 uint64_t seed) {
    std::vector<BudgetedRecord> records;
    for (std::size_t i = 0; i < data.size(); ++i) {
      records.push_back({data[i], i < budgets.size() ? budgets[i] : t});
    }
    if (records.empty()) return LaplaceMechanism(0, 1.0, t, seed).value;
    return PdpQuery(QueryKind::kCount, records, {t, seed}).value;
  };
  return target;
}

}  // namespace gazedp::pdp

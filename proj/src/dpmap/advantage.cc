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

#include "gazedp/dpmap/advantage.h"

#include <cmath>
#include <string>

#include "gazedp/common/errors.h"

namespace gazedp::dpmap {

Advantage Advantage::FromValue(double value) {
  if (!(value >= 0 && value < 1)) {
    throw ArgumentError("advantage must lie in [0, 1), got " +
                        std::to_string(value));
  }
  return Advantage(value, 1 - value);
}

Advantage Advantage::FromComplement(double complement) {
  if (!(complement > 0 && complement <= 1)) {
    throw ArgumentError("advantage complement must lie in (0, 1], got " +
                        std::to_string(complement));
  }
  return Advantage(1 - complement, complement);
}

Advantage AdversaryAdvantageExact(double eps) {
  if (!std::isfinite(eps) || eps < 0) {
    throw ArgumentError("epsilon must be finite and nonnegative, got " +
                        std::to_string(eps));
  }
  // 1 - tanh(eps/2) = 2 / (e^eps + 1), computed without cancellation.
  const double complement = 2 / (std::exp(eps) + 1);
  if (complement <= 0) {
    throw ArgumentError("epsilon too large for double precision");
  }
  return Advantage(std::tanh(eps / 2), complement);
}

double AdversaryAdvantage(double eps) {
  return AdversaryAdvantageExact(eps).value();
}

double AdvantageToEpsilon(double a) {
  return AdvantageToEpsilon(Advantage::FromValue(a));
}

double AdvantageToEpsilon(const Advantage& a) {
  if (a.value() < 0.5) return 2 * std::atanh(a.value());
  return std::log1p(a.value()) - std::log(a.complement());
}

}  // namespace gazedp::dpmap

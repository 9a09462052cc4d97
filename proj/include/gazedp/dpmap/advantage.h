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

#ifndef GAZEDP_DPMAP_ADVANTAGE_H_
#define GAZEDP_DPMAP_ADVANTAGE_H_

namespace gazedp::dpmap {

// Distinguishing advantage a in [0, 1) together with its complement 1 - a.
// The complement is tracked separately because for large epsilon 1 - a
// underflows relative to a, and the inverse map needs it to full precision.
class Advantage;
Advantage AdversaryAdvantageExact(double eps);

class Advantage {
 public:
  // Throws ArgumentError unless 0 <= value < 1.
  static Advantage FromValue(double value);
  // Throws ArgumentError unless 0 < complement <= 1.
  static Advantage FromComplement(double complement);

  double value() const { return value_; }
  double complement() const { return complement_; }

 private:
  friend Advantage AdversaryAdvantageExact(double eps);

  Advantage(double value, double complement)
      : value_(value), complement_(complement) {}

  double value_;
  double complement_;
};

// (e^eps - 1) / (e^eps + 1) = tanh(eps / 2). Throws ArgumentError for
// negative or non-finite eps.
double AdversaryAdvantage(double eps);
Advantage AdversaryAdvantageExact(double eps);

// ln((1 + a) / (1 - a)). Throws ArgumentError unless 0 <= a < 1.
double AdvantageToEpsilon(double a);
double AdvantageToEpsilon(const Advantage& a);

}  // namespace gazedp::dpmap

#endif  // GAZEDP_DPMAP_ADVANTAGE_H_

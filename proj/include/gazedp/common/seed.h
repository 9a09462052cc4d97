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

#ifndef GAZEDP_COMMON_SEED_H_
#define GAZEDP_COMMON_SEED_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace gazedp {

// SplitMix64 finalizer; a bijection on 64-bit integers.
uint64_t MixSeed(uint64_t x);

// Independent child seed for the `stream`-th job under `base`. Used so that
// parallel or reordered work draws the same randomness per job.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);
uint64_t DeriveSeed(uint64_t base, std::string_view tag);

using Rng = std::mt19937_64;

inline Rng MakeRng(uint64_t seed) { return Rng(MixSeed(seed)); }

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace gazedp

#endif  // GAZEDP_COMMON_SEED_H_

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

#ifndef GAZEDP_BENCH_CONFIG_H_
#define GAZEDP_BENCH_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gazedp/dpmap/mapping.h"
#include "gazedp/ingest/synth.h"
#include "gazedp/ingest/vocabulary.h"
#include "gazedp/pdp/regression.h"
#include "gazedp/pdp/sample_mechanism.h"
#include "gazedp/predict/classifiers.h"
#include "json.hpp"

namespace gazedp::bench {

enum class BenchTask {
  kCount,
  kMedian,
  kMin,
  kRegressionWeighting,
  kRegressionSampling,
};

std::string_view BenchTaskName(BenchTask t);
std::optional<BenchTask> BenchTaskFromName(std::string_view name);
bool IsQuery(BenchTask t);

enum class Baseline { kPlain, kStatic, kRandom };

std::string_view BaselineName(Baseline b);
std::optional<Baseline> BaselineFromName(std::string_view name);

enum class LevelSource { kTrue, kPredicted };

struct NamedMapping {
  std::string name;  // column label; defaults to the kind name
  dpmap::MappingSpec spec;
};

struct RegressionConfig {
  double clip_norm = 1.0;
  int epochs = 100;
  double rate = 0.1;
  int batch_size = 32;
  double test_fraction = 0.2;
};

struct PredictionConfig {
  predict::ModelSpec model;
  int folds = 5;
};

struct BenchConfig {
  ingest::SynthSpec synth;
  std::vector<NamedMapping> mappings;
  std::vector<BenchTask> tasks;
  std::vector<Baseline> baselines;
  int repetitions = 30;
  uint64_t seed = 1;
  std::string output_dir = "bench_out";
  LevelSource level_source = LevelSource::kTrue;
  pdp::ThresholdPolicy threshold_policy = pdp::ThresholdPolicy::kOptimal;
  // The count query counts trials whose attribute falls in this category.
  ingest::Category count_category = ingest::Category::kDocuments;
  RegressionConfig regression;
  PredictionConfig prediction;
};

// Defaults: skewed synthetic data (10 participants x 20 trials), the four
// mappings at eps in [0.1, 5] with k = 1.5, all five tasks, all baselines.
BenchConfig DefaultBenchConfig();

// Throws ArgumentError on the first invalid field.
void CheckBenchConfig(const BenchConfig& c);

// Missing fields keep DefaultBenchConfig() values. Unknown top-level keys
// are rejected.
BenchConfig BenchConfigFromJson(const nlohmann::json& j);
nlohmann::json BenchConfigToJson(const BenchConfig& c);

}  // namespace gazedp::bench

#endif  // GAZEDP_BENCH_CONFIG_H_

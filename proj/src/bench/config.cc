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

#include "gazedp/bench/config.h"

#include <array>
#include <cmath>
#include <set>

#include "gazedp/common/errors.h"

namespace gazedp::bench {
namespace {

constexpr std::array<std::pair<BenchTask, std::string_view>, 5> kTaskNames{{
    {BenchTask::kCount, "count"},
    {BenchTask::kMedian, "median"},
    {BenchTask::kMin, "min"},
    {BenchTask::kRegressionWeighting, "regression_weighting"},
    {BenchTask::kRegressionSampling, "regression_sampling"},
}};

template <typename T>
T Required(std::optional<T> v, const std::string& what) {
  if (!v) throw ArgumentError("unknown " + what);
  return *v;
}

}  // namespace

std::string_view BenchTaskName(BenchTask t) {
  for (const auto& [k, n] : kTaskNames) {
    if (k == t) return n;
  }
  return "unknown";
}

std::optional<BenchTask> BenchTaskFromName(std::string_view name) {
  for (const auto& [k, n] : kTaskNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool IsQuery(BenchTask t) {
  return t == BenchTask::kCount || t == BenchTask::kMedian || t == BenchTask::kMin;
}

std::string_view BaselineName(Baseline b) {
  switch (b) {
    case Baseline::kPlain:
      return "plain";
    case Baseline::kStatic:
      return "static";
    case Baseline::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<Baseline> BaselineFromName(std::string_view name) {
  for (Baseline b : {Baseline::kPlain, Baseline::kStatic, Baseline::kRandom}) {
    if (BaselineName(b) == name) return b;
  }
  return std::nullopt;
}

BenchConfig DefaultBenchConfig() {
  BenchConfig c;
  c.synth = ingest::DefaultSkewedSpec();
  c.synth.n_participants = 10;
  c.synth.n_trials_per_participant = 20;
  for (auto kind : {dpmap::MappingKind::kLinear, dpmap::MappingKind::kExponential,
                    dpmap::MappingKind::kSequential, dpmap::MappingKind::kSigmoid}) {
    dpmap::MappingSpec spec;
    spec.kind = kind;
    c.mappings.push_back({std::string(dpmap::MappingKindName(kind)), spec});
  }
  c.tasks = {BenchTask::kCount, BenchTask::kMedian, BenchTask::kMin,
             BenchTask::kRegressionWeighting, BenchTask::kRegressionSampling};
  c.baselines = {Baseline::kPlain, Baseline::kStatic, Baseline::kRandom};
  return c;
}

void CheckBenchConfig(const BenchConfig& c) {
  ingest::CheckSynthSpec(c.synth);
  if (c.repetitions < 1) throw ArgumentError("repetitions must be >= 1");
  if (c.tasks.empty()) throw ArgumentError("at least one task is required");
  if (c.mappings.empty()) throw ArgumentError("at least one mapping is required");
  std::set<std::string> names;
  for (Baseline b : c.baselines) {
    if (!names.insert(std::string(BaselineName(b))).second) {
      throw ArgumentError("duplicate baseline " + std::string(BaselineName(b)));
    }
  }
  for (const auto& m : c.mappings) {
    dpmap::CheckMappingSpec(m.spec);
    if (m.spec.levels != c.synth.levels) {
      throw ArgumentError("mapping '" + m.name + "' levels differ from synth levels");
    }
    if (m.name.empty() || !names.insert(m.name).second) {
      throw ArgumentError("mapping names must be unique and nonempty: '" + m.name + "'");
    }
  }
  std::set<BenchTask> tasks(c.tasks.begin(), c.tasks.end());
  if (tasks.size() != c.tasks.size()) throw ArgumentError("duplicate task");
  const auto& r = c.regression;
  if (!(r.clip_norm > 0) || r.epochs < 1 || !(r.rate > 0) || r.batch_size < 0 ||
      !(r.test_fraction > 0 && r.test_fraction < 1)) {
    throw ArgumentError("invalid regression settings");
  }
  predict::CheckModelSpec(c.prediction.model);
  if (c.prediction.folds < 2) throw ArgumentError("prediction folds must be >= 2");
}

BenchConfig BenchConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("bench config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "synth",          "mappings",         "tasks",          "baselines",
      "repetitions",    "seed",             "output_dir",     "level_source",
      "threshold_policy", "count_category", "regression",     "prediction"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ArgumentError("unknown bench config key: " + key);
  }
  BenchConfig c = DefaultBenchConfig();
  try {
    if (j.contains("synth")) {
      // Start from the benchmark's synth defaults, then apply overrides.
      nlohmann::json merged = ingest::SynthSpecToJson(c.synth);
      merged.merge_patch(j.at("synth"));
      c.synth = ingest::SynthSpecFromJson(merged);
    }
    if (j.contains("mappings")) {
      c.mappings.clear();
      for (const auto& m : j.at("mappings")) {
        NamedMapping nm;
        nlohmann::json spec = m;
        if (spec.contains("name")) {
          nm.name = spec.at("name").get<std::string>();
          spec.erase("name");
        }
        nm.spec = dpmap::MappingSpecFromJson(spec);
        if (nm.name.empty()) nm.name = std::string(dpmap::MappingKindName(nm.spec.kind));
        c.mappings.push_back(nm);
      }
    }
    if (j.contains("tasks")) {
      c.tasks.clear();
      for (const auto& t : j.at("tasks")) {
        c.tasks.push_back(Required(BenchTaskFromName(t.get<std::string>()),
                                   "task " + t.get<std::string>()));
      }
    }
    if (j.contains("baselines")) {
      c.baselines.clear();
      for (const auto& b : j.at("baselines")) {
        c.baselines.push_back(Required(BaselineFromName(b.get<std::string>()),
                                       "baseline " + b.get<std::string>()));
      }
    }
    c.repetitions = j.value("repetitions", c.repetitions);
    c.seed = j.value("seed", c.seed);
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("level_source")) {
      const auto s = j.at("level_source").get<std::string>();
      if (s == "true") {
        c.level_source = LevelSource::kTrue;
      } else if (s == "predicted") {
        c.level_source = LevelSource::kPredicted;
      } else {
        throw ArgumentError("level_source must be 'true' or 'predicted'");
      }
    }
    if (j.contains("threshold_policy")) {
      const auto s = j.at("threshold_policy").get<std::string>();
      c.threshold_policy =
          Required(pdp::ThresholdPolicyFromName(s), "threshold_policy " + s);
    }
    if (j.contains("count_category")) {
      const auto s = j.at("count_category").get<std::string>();
      c.count_category = Required(ingest::CategoryFromName(s), "category " + s);
    }
    if (j.contains("regression")) {
      const auto& r = j.at("regression");
      c.regression.clip_norm = r.value("clip_norm", c.regression.clip_norm);
      c.regression.epochs = r.value("epochs", c.regression.epochs);
      c.regression.rate = r.value("rate", c.regression.rate);
      c.regression.batch_size = r.value("batch_size", c.regression.batch_size);
      c.regression.test_fraction = r.value("test_fraction", c.regression.test_fraction);
    }
    if (j.contains("prediction")) {
      const auto& p = j.at("prediction");
      if (p.contains("model")) c.prediction.model = predict::ModelSpecFromJson(p.at("model"));
      c.prediction.folds = p.value("folds", c.prediction.folds);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bench config: ") + e.what());
  }
  CheckBenchConfig(c);
  return c;
}

nlohmann::json BenchConfigToJson(const BenchConfig& c) {
  nlohmann::json mappings = nlohmann::json::array();
  for (const auto& m : c.mappings) {
    nlohmann::json spec = dpmap::MappingSpecToJson(m.spec);
    spec["name"] = m.name;
    mappings.push_back(spec);
  }
  nlohmann::json tasks = nlohmann::json::array();
  for (BenchTask t : c.tasks) tasks.push_back(BenchTaskName(t));
  nlohmann::json baselines = nlohmann::json::array();
  for (Baseline b : c.baselines) baselines.push_back(BaselineName(b));
  return {{"synth", ingest::SynthSpecToJson(c.synth)},
          {"mappings", mappings},
          {"tasks", tasks},
          {"baselines", baselines},
          {"repetitions", c.repetitions},
          {"seed", c.seed},
          {"output_dir", c.output_dir},
          {"level_source", c.level_source == LevelSource::kTrue ? "true" : "predicted"},
          {"threshold_policy", pdp::ThresholdPolicyName(c.threshold_policy)},
          {"count_category", ingest::CategoryName(c.count_category)},
          {"regression",
           {{"clip_norm", c.regression.clip_norm},
            {"epochs", c.regression.epochs},
            {"rate", c.regression.rate},
            {"batch_size", c.regression.batch_size},
            {"test_fraction", c.regression.test_fraction}}},
          {"prediction",
           {{"model", predict::ModelSpecToJson(c.prediction.model)},
            {"folds", c.prediction.folds}}}};
}

}  // namespace gazedp::bench

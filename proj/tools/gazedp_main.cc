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

// Command-line front end. Every subcommand is deterministic in its inputs
// and --seed; outputs go to --out (file or directory) or standard output.
// Exit status: 0 success, 1 runtime error, 2 usage error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gazedp/bench/benchmark.h"
#include "gazedp/bench/config.h"
#include "gazedp/common/csv.h"
#include "gazedp/common/errors.h"
#include "gazedp/dpmap/mapping.h"
#include "gazedp/events/detectors.h"
#include "gazedp/events/features.h"
#include "gazedp/events/rank_tests.h"
#include "gazedp/ingest/dataset_io.h"
#include "gazedp/ingest/downsample.h"
#include "gazedp/ingest/synth.h"
#include "gazedp/pdp/audit.h"
#include "gazedp/pdp/sample_mechanism.h"
#include "gazedp/predict/classifiers.h"
#include "gazedp/predict/clustering.h"
#include "gazedp/predict/evaluation.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gazedp {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

// Writes `text` to `out`, or to standard output when `out` is empty.
void Emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path p(out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

ingest::Dataset LoadDataset(const std::string& path, double downsample_hz) {
  ingest::Dataset d = ingest::ParseDataset(ingest::ResolveDatasetPath(path));
  if (downsample_hz > 0) d = ingest::DownsampleDataset(d, downsample_hz);
  return d;
}

predict::TaskKind ParseTask(const std::string& name) {
  const auto t = predict::TaskKindFromName(name);
  if (!t) throw UsageError("unknown task: " + name);
  return *t;
}

predict::ModelSpec ParseModel(const std::string& name, uint64_t seed) {
  const auto k = predict::ModelKindFromName(name);
  if (!k) throw UsageError("unknown model: " + name);
  predict::ModelSpec spec;
  spec.kind = *k;
  spec.seed = seed;
  return spec;
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
};

int RunGen(const GenArgs& a) {
  ingest::SynthSpec spec =
      a.config.empty() ? ingest::DefaultSkewedSpec()
                       : ingest::SynthSpecFromJson(ReadJsonFile(a.config));
  if (a.seed) spec.seed = *a.seed;
  const ingest::Dataset d = ingest::SynthesizeDataset(spec);
  fs::create_directories(a.out);
  ingest::WriteDataset(d, fs::path(a.out) / ingest::kDatasetFileName);
  Emit((fs::path(a.out) / "synth.json").string(),
       ingest::SynthSpecToJson(spec).dump(2) + "\n");
  std::cerr << "wrote " << d.trials.size() << " trials for "
            << d.profiles.size() << " participants to " << a.out << "\n";
  return 0;
}

// ---- validate ---------------------------------------------------------------

int RunValidate(const std::string& path) {
  const fs::path file = ingest::ResolveDatasetPath(path);
  try {
    const ingest::Dataset d = ingest::ParseDataset(file);
    std::cout << "ok: " << d.profiles.size() << " participants, "
              << d.trials.size() << " trials, L=" << d.levels << "\n";
    return 0;
  } catch (const ParseError& e) {
    std::cerr << file.string() << ": " << e.what() << "\n";
    return 1;
  }
}

// ---- detect / features ------------------------------------------------------

struct DataArgs {
  std::string data;
  std::string out;
  double downsample_hz = 0;
};

int RunDetect(const DataArgs& a) {
  const ingest::Dataset d = LoadDataset(a.data, a.downsample_hz);
  std::ostringstream os;
  os << "trial,participant,stimulus,type,onset_ms,offset_ms,duration_ms,"
        "x_px,y_px,amplitude_deg,peak_velocity_deg_s\n";
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    const ingest::Trial& t = d.trials[i];
    const events::Events ev = events::DetectEvents(t.samples, d.geometry);
    const std::string key = std::to_string(i) + "," + csv::Escape(t.participant_id) +
                            "," + csv::Escape(t.stimulus_id);
    for (const auto& f : ev.fixations) {
      os << key << ",fixation," << csv::FormatDouble(f.onset_ms) << ','
         << csv::FormatDouble(f.offset_ms) << ',' << csv::FormatDouble(f.duration_ms())
         << ',' << csv::FormatDouble(f.centroid_x_px) << ','
         << csv::FormatDouble(f.centroid_y_px) << ",,\n";
    }
    for (const auto& s : ev.saccades) {
      os << key << ",saccade," << csv::FormatDouble(s.onset_ms) << ','
         << csv::FormatDouble(s.offset_ms) << ','
         << csv::FormatDouble(s.offset_ms - s.onset_ms) << ",,,"
         << csv::FormatDouble(s.amplitude_deg) << ','
         << csv::FormatDouble(s.peak_velocity_deg_s) << '\n';
    }
  }
  Emit(a.out, os.str());
  return 0;
}

int RunFeatures(const DataArgs& a, bool context) {
  const ingest::Dataset d = LoadDataset(a.data, a.downsample_hz);
  const auto features = events::ExtractAll(d, {}, context);
  std::ostringstream os;
  events::WriteFeatureTable(d, features, os);
  Emit(a.out, os.str());
  return 0;
}

// ---- stats ------------------------------------------------------------------

struct StatsArgs {
  DataArgs data;
  std::string feature = "mean_fixation_ms";
};

json TestJson(const events::TestResult& r) {
  return {{"method", r.method}, {"statistic", r.statistic}, {"p_value", r.p_value}};
}

int RunStats(const StatsArgs& a) {
  const ingest::Dataset d = LoadDataset(a.data.data, a.data.downsample_hz);
  const auto features = events::ExtractAll(d);
  if (!events::FeatureVector{}.Get(a.feature)) {
    throw UsageError("unknown feature: " + a.feature);
  }
  std::map<int, std::vector<double>> by_level;
  std::vector<double> expert, novice;
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    if (!features[i].valid) continue;
    const double v = *features[i].Get(a.feature);
    by_level[d.trials[i].rating_l].push_back(v);
    const auto* p = d.FindProfile(d.trials[i].participant_id);
    (p && p->privacy_expert ? expert : novice).push_back(v);
  }
  json out = {{"feature", a.feature}};
  std::vector<std::vector<double>> groups;
  std::vector<int> levels;
  for (auto& [l, v] : by_level) {
    levels.push_back(l);
    groups.push_back(v);
  }
  out["levels"] = levels;
  if (groups.size() >= 2) {
    out["kruskal_wallis"] = TestJson(events::KruskalWallis(groups));
    json pairs = json::array();
    for (const auto& p : events::DunnBonferroni(groups)) {
      pairs.push_back({{"level_a", levels[p.group_a]},
                       {"level_b", levels[p.group_b]},
                       {"z", p.z},
                       {"p_unadjusted", p.p_unadjusted},
                       {"p_adjusted", p.p_adjusted}});
    }
    out["dunn_bonferroni"] = pairs;
  }
  if (!expert.empty() && !novice.empty()) {
    out["mann_whitney_expert_vs_non_expert"] =
        TestJson(events::MannWhitneyU(expert, novice));
  }
  Emit(a.data.out, out.dump(2) + "\n");
  return 0;
}

// ---- train / eval -----------------------------------------------------------

struct ModelArgs {
  DataArgs data;
  std::string task = "binary_privacy";
  std::string model = "logistic_regression";
  std::string split = "person_independent";
  int folds = 5;
  uint64_t seed = 0;
  int k_min = 2;
  int k_max = 12;
};

int RunTrain(const ModelArgs& a) {
  const ingest::Dataset d = LoadDataset(a.data.data, a.data.downsample_hz);
  predict::TaskSpec task;
  task.task = ParseTask(a.task);
  const auto data = predict::BuildTaskData(task, d, events::ExtractAll(d));
  const predict::Model m =
      predict::Train(ParseModel(a.model, a.seed), data.X, data.y, data.num_classes());
  json j = m.ToJson();
  j["task"] = predict::TaskSpecToJson(task);
  j["class_names"] = data.class_names;
  j["feature_names"] = data.feature_names;
  Emit(a.data.out, j.dump(2) + "\n");
  return 0;
}

int RunEval(const ModelArgs& a) {
  const ingest::Dataset d = LoadDataset(a.data.data, a.data.downsample_hz);
  const auto features = events::ExtractAll(d);
  if (a.task == "profile") {
    const auto pm = predict::ParticipantFeatureMeans(d, features);
    const int k_max = std::min<int>(a.k_max, static_cast<int>(pm.X.rows()) - 1);
    const auto sweep = predict::ProfileSweep(pm.X, a.k_min, k_max, a.seed);
    json scores = json::array();
    for (const auto& [k, s] : sweep.scores) scores.push_back({{"k", k}, {"silhouette", s}});
    const auto best = predict::KMeans(pm.X, sweep.best_k,
                                      DeriveSeed(a.seed, static_cast<uint64_t>(sweep.best_k)));
    json assignment = json::object();
    for (std::size_t i = 0; i < pm.participant_ids.size(); ++i) {
      assignment[pm.participant_ids[i]] = best.labels[i];
    }
    const json out = {{"task", "profile"},       {"seed", a.seed},
                      {"k_min", a.k_min},        {"k_max", k_max},
                      {"selection", "max_silhouette"},
                      {"best_k", sweep.best_k},  {"scores", scores},
                      {"assignment", assignment}};
    Emit(a.data.out, out.dump(2) + "\n");
    return 0;
  }
  predict::TaskSpec task;
  task.task = ParseTask(a.task);
  const auto split = predict::SplitKindFromName(a.split);
  if (!split) throw UsageError("unknown split: " + a.split);
  task.split = *split;
  const auto report = predict::CrossValidate(
      ParseModel(a.model, a.seed), task, predict::BuildTaskData(task, d, features), a.folds);
  json j = predict::ToJson(report);
  j["downsample_hz"] = a.data.downsample_hz;
  Emit(a.data.out, j.dump(2) + "\n");
  return 0;
}

// ---- map --------------------------------------------------------------------

struct MapArgs {
  std::string kind = "linear";
  double eps_min = 0.1;
  double eps_max = 5;
  int levels = 7;
  double k = 1.5;
  std::string out;
};

int RunMap(const MapArgs& a) {
  dpmap::MappingSpec spec;
  const auto kind = dpmap::MappingKindFromName(a.kind);
  if (!kind) throw UsageError("unknown mapping kind: " + a.kind);
  spec.kind = *kind;
  spec.eps_min = a.eps_min;
  spec.eps_max = a.eps_max;
  spec.levels = a.levels;
  spec.k = a.k;
  std::ostringstream os;
  dpmap::WriteMappingTable(spec, os);
  Emit(a.out, os.str());
  return 0;
}

// ---- query ------------------------------------------------------------------

struct QueryArgs {
  std::string records;
  std::string kind = "count";
  std::string policy = "optimal";
  double t = 0;
  uint64_t seed = 0;
  std::string out;
};

std::vector<pdp::BudgetedRecord> ReadRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<pdp::BudgetedRecord> records;
  int value_col = -1, eps_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = csv::SplitLine(line, line_no);
    if (value_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "value") value_col = static_cast<int>(i);
        if (fields[i] == "epsilon") eps_col = static_cast<int>(i);
      }
      if (value_col < 0 || eps_col < 0) {
        throw ParseError(line_no, "records header needs columns value,epsilon");
      }
      continue;
    }
    if (fields.size() <= static_cast<std::size_t>(std::max(value_col, eps_col))) {
      throw ParseError(line_no, "too few fields");
    }
    records.push_back({csv::ParseDouble(fields[static_cast<std::size_t>(value_col)],
                                        line_no, "value"),
                       csv::ParseDouble(fields[static_cast<std::size_t>(eps_col)],
                                        line_no, "epsilon")});
  }
  return records;
}

int RunQuery(const QueryArgs& a) {
  const auto kind = pdp::QueryKindFromName(a.kind);
  if (!kind) throw UsageError("unknown query kind: " + a.kind);
  const auto records = ReadRecords(a.records);
  double t = a.t;
  std::string policy = "fixed";
  if (!(t > 0)) {
    const auto p = pdp::ThresholdPolicyFromName(a.policy);
    if (!p) throw UsageError("unknown threshold policy: " + a.policy);
    std::vector<double> budgets;
    for (const auto& r : records) budgets.push_back(r.epsilon);
    t = pdp::ChooseThreshold(budgets, *p);
    policy = a.policy;
  }
  const auto result = pdp::PdpQuery(*kind, records, {t, a.seed});
  json j = pdp::ToJson(result);
  j["threshold_policy"] = policy;
  j["exact"] = pdp::ExactQuery(*kind, records);
  Emit(a.out, j.dump(2) + "\n");
  return 0;
}

// ---- audit ------------------------------------------------------------------

struct AuditArgs {
  std::string mechanism = "laplace";
  double epsilon = 1;
  std::size_t trials = 100000;
  std::size_t records = 10;
  uint64_t seed = 0;
  std::string out;
};

int RunAudit(const AuditArgs& a) {
  pdp::AuditTarget target;
  std::vector<double> d0, d1;
  if (a.mechanism == "laplace") {
    target = pdp::LaplaceCountTarget(a.epsilon);
    d0.assign(a.records, 1.0);
    d1 = d0;
    d1.back() = 0.0;
  } else if (a.mechanism == "randomized_response") {
    target = pdp::RandomizedResponseTarget(a.epsilon);
    d0 = {0.0};
    d1 = {1.0};
  } else if (a.mechanism == "pdp_count") {
    target = pdp::PdpCountTarget(std::vector<double>(a.records, a.epsilon), a.epsilon);
    d0.assign(a.records, 1.0);
    d1 = d0;
    d1.back() = 0.0;
  } else {
    throw UsageError("unknown mechanism: " + a.mechanism);
  }
  const auto report = pdp::AuditAdvantage(target, d0, d1, a.trials, a.seed);
  Emit(a.out, pdp::ToJson(report).dump(2) + "\n");
  return 0;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  bool predicted = false;
};

int RunBench(const BenchArgs& a) {
  bench::BenchConfig c = a.config.empty()
                             ? bench::DefaultBenchConfig()
                             : bench::BenchConfigFromJson(ReadJsonFile(a.config));
  if (a.seed) c.seed = *a.seed;
  if (!a.out.empty()) c.output_dir = a.out;
  if (a.predicted) c.level_source = bench::LevelSource::kPredicted;
  const auto report = bench::RunBenchmark(c);
  bench::WriteBenchOutputs(report, c.output_dir);
  std::ostringstream os;
  bench::WriteReportCsv(report, os);
  std::cout << os.str();
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"gazedp: gaze-based perceived privacy and personalised DP toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
  gen_cmd->add_option("--config", gen.config, "synthetic spec JSON");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--seed", gen.seed, "override the spec seed");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a dataset");
  validate_cmd->add_option("path", validate_path, "dataset file or directory")->required();

  auto add_data = [](CLI::App* cmd, DataArgs& a) {
    cmd->add_option("--data", a.data, "dataset file or directory")->required();
    cmd->add_option("--out", a.out, "output file (default: stdout)");
    cmd->add_option("--downsample", a.downsample_hz, "decimate to this rate (Hz)");
  };

  DataArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "detect fixations and saccades");
  add_data(detect_cmd, detect);

  DataArgs feats;
  bool with_context = false;
  auto* features_cmd = app.add_subcommand("features", "per-trial gaze features");
  add_data(features_cmd, feats);
  features_cmd->add_flag("--context", with_context, "append participant context");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "rank tests on one gaze feature");
  add_data(stats_cmd, stats.data);
  stats_cmd->add_option("--feature", stats.feature, "gaze feature name");

  ModelArgs train;
  auto* train_cmd = app.add_subcommand("train", "train a model on all trials");
  add_data(train_cmd, train.data);
  train_cmd->add_option("--task", train.task, "prediction task");
  train_cmd->add_option("--model", train.model, "model kind");
  train_cmd->add_option("--seed", train.seed, "model seed");

  ModelArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "cross-validate a model, or profile users");
  add_data(eval_cmd, eval.data);
  eval_cmd->add_option("--task", eval.task, "prediction task or 'profile'");
  eval_cmd->add_option("--model", eval.model, "model kind");
  eval_cmd->add_option("--split", eval.split, "person_independent | person_specific");
  eval_cmd->add_option("--folds", eval.folds, "number of folds");
  eval_cmd->add_option("--seed", eval.seed, "split and model seed");
  eval_cmd->add_option("--k-min", eval.k_min, "profile: smallest k");
  eval_cmd->add_option("--k-max", eval.k_max, "profile: largest k");

  MapArgs map;
  auto* map_cmd = app.add_subcommand("map", "perceived-privacy level to epsilon table");
  map_cmd->add_option("--kind", map.kind, "linear | exponential | sequential | sigmoid");
  map_cmd->add_option("--eps-min", map.eps_min, "smallest budget");
  map_cmd->add_option("--eps-max", map.eps_max, "largest budget");
  map_cmd->add_option("--levels", map.levels, "number of levels L");
  map_cmd->add_option("--k", map.k, "sigmoid steepness");
  map_cmd->add_option("--out", map.out, "output file (default: stdout)");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "personalised DP query on budgeted records");
  query_cmd->add_option("--records", query.records, "CSV with columns value,epsilon")
      ->required();
  query_cmd->add_option("--kind", query.kind, "count | median | min");
  query_cmd->add_option("--t", query.t, "sampling threshold (overrides --policy)");
  query_cmd->add_option("--policy", query.policy, "eps_max | optimal");
  query_cmd->add_option("--seed", query.seed, "mechanism seed");
  query_cmd->add_option("--out", query.out, "output file (default: stdout)");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "empirical distinguishing-game audit");
  audit_cmd->add_option("--mechanism", audit.mechanism,
                        "laplace | randomized_response | pdp_count");
  audit_cmd->add_option("--epsilon", audit.epsilon, "claimed epsilon");
  audit_cmd->add_option("--trials", audit.trials, "game rounds (>= 1000)");
  audit_cmd->add_option("--records", audit.records, "dataset size for count targets");
  audit_cmd->add_option("--seed", audit.seed, "audit seed");
  audit_cmd->add_option("--out", audit.out, "output file (default: stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "run the PDP benchmark");
  bench_cmd->add_option("--config", bench_args.config, "bench config JSON");
  bench_cmd->add_option("--out", bench_args.out, "output directory (overrides config)");
  bench_cmd->add_option("--seed", bench_args.seed, "override the config seed");
  bench_cmd->add_flag("--predicted", bench_args.predicted,
                      "derive levels from a cross-validated level model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*validate_cmd) return RunValidate(validate_path);
    if (*detect_cmd) return RunDetect(detect);
    if (*features_cmd) return RunFeatures(feats, with_context);
    if (*stats_cmd) return RunStats(stats);
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval);
    if (*map_cmd) return RunMap(map);
    if (*query_cmd) return RunQuery(query);
    if (*audit_cmd) return RunAudit(audit);
    if (*bench_cmd) return RunBench(bench_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace gazedp

int main(int argc, char** argv) { return gazedp::Main(argc, argv); }

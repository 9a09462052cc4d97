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

#include "gazedp/bench/benchmark.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "gazedp/common/csv.h"
#include "gazedp/common/errors.h"
#include "gazedp/common/seed.h"
#include "gazedp/events/features.h"
#include "gazedp/ingest/synth.h"
#include "gazedp/pdp/regression.h"
#include "gazedp/predict/evaluation.h"

namespace gazedp::bench {
namespace {

constexpr std::string_view kPlain = "plain";

// Budgets per trial for every noisy condition, in report column order.
struct ConditionBudgets {
  std::string name;
  std::vector<double> budgets;
};

std::vector<int> Levels(const BenchConfig& c, const ingest::Dataset& d,
                        const std::vector<events::FeatureVector>& features,
                        uint64_t rep_seed) {
  std::vector<int> levels;
  for (const auto& t : d.trials) levels.push_back(t.rating_l);
  if (c.level_source == LevelSource::kTrue) return levels;

  predict::TaskSpec task;
  task.task = predict::TaskKind::kLevelPrivacy;
  task.free_view_only = false;
  const predict::LabeledData data = predict::BuildTaskData(task, d, features);
  predict::ModelSpec model = c.prediction.model;
  model.seed = DeriveSeed(rep_seed, "predict");
  const predict::EvalReport report =
      predict::CrossValidate(model, task, data, c.prediction.folds);
  // Trials without a held-out prediction get the most private level.
  std::vector<int> predicted(d.trials.size(), 1);
  for (std::size_t r = 0; r < data.trial_index.size(); ++r) {
    if (report.oof_predictions[r] >= 0) {
      predicted[data.trial_index[r]] = report.oof_predictions[r] + 1;
    }
  }
  return predicted;
}

std::vector<ConditionBudgets> Budgets(const BenchConfig& c,
                                      const std::vector<int>& levels,
                                      uint64_t rep_seed) {
  std::vector<ConditionBudgets> mapped;
  double worst = INFINITY;
  for (const auto& m : c.mappings) {
    ConditionBudgets cb{m.name, {}};
    for (int l : levels) {
      cb.budgets.push_back(dpmap::MapLevel(m.spec, l));
      worst = std::min(worst, cb.budgets.back());
    }
    mapped.push_back(std::move(cb));
  }
  std::vector<ConditionBudgets> out;
  for (Baseline b : c.baselines) {
    if (b == Baseline::kStatic) {
      out.push_back({"static", std::vector<double>(levels.size(), worst)});
    } else if (b == Baseline::kRandom) {
      const auto& ref = c.mappings.front().spec;
      Rng rng = MakeRng(DeriveSeed(rep_seed, "random"));
      ConditionBudgets cb{"random", {}};
      for (std::size_t i = 0; i < levels.size(); ++i) {
        cb.budgets.push_back(ref.eps_min +
                             (ref.eps_max - ref.eps_min) * UniformUnit(rng));
      }
      out.push_back(std::move(cb));
    }
  }
  for (auto& m : mapped) out.push_back(std::move(m));
  return out;
}

struct Outcome {
  double utility;
  double abs_error;
};

Outcome RunQuery(pdp::QueryKind kind, const std::vector<double>& values,
                 const std::vector<double>* budgets, pdp::ThresholdPolicy policy,
                 uint64_t seed) {
  std::vector<pdp::BudgetedRecord> records;
  for (std::size_t i = 0; i < values.size(); ++i) {
    records.push_back({values[i], budgets ? (*budgets)[i] : 1.0});
  }
  const double truth = pdp::ExactQuery(kind, records);
  if (budgets == nullptr) return {QueryUtility(truth, truth), 0.0};
  const double t = pdp::ChooseThreshold(*budgets, policy);
  const double noisy = pdp::PdpQuery(kind, records, {t, seed}).value;
  return {QueryUtility(truth, noisy), std::abs(noisy - truth)};
}

struct RegressionData {
  Eigen::MatrixXd X_train, X_test;
  Eigen::VectorXd y_train, y_test;
  std::vector<std::size_t> train_trials;
  std::vector<uint64_t> train_ids;
};

RegressionData SplitRegression(const ingest::Dataset& d,
                               const std::vector<events::FeatureVector>& features,
                               double test_fraction, uint64_t seed) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < d.trials.size(); ++i) {
    if (features[i].valid) rows.push_back(i);
  }
  if (rows.size() < 4) throw ArgumentError("too few valid trials for regression");
  Rng rng = MakeRng(seed);
  std::shuffle(rows.begin(), rows.end(), rng);
  auto n_test = static_cast<std::size_t>(
      std::lround(test_fraction * static_cast<double>(rows.size())));
  n_test = std::clamp<std::size_t>(n_test, 1, rows.size() - 2);
  std::vector<std::size_t> test(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<std::size_t> train(rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());

  constexpr auto kD = events::FeatureVector::kNumGazeFeatures;
  const double mid = 0.5 * (d.levels + 1);
  const double half = std::max(0.5 * (d.levels - 1), 1.0);
  auto fill = [&](const std::vector<std::size_t>& idx, Eigen::MatrixXd& X,
                  Eigen::VectorXd& y) {
    X.resize(static_cast<Eigen::Index>(idx.size()), kD);
    y.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const auto v = features[idx[r]].GazeValues();
      for (std::size_t c = 0; c < kD; ++c) {
        X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[c];
      }
      // Rescale the rating to [-1, 1] with the public scale bounds; R^2 is
      // unaffected and residuals start small under clipping.
      y(static_cast<Eigen::Index>(r)) = (d.trials[idx[r]].rating_l - mid) / half;
    }
  };
  RegressionData out;
  fill(train, out.X_train, out.y_train);
  fill(test, out.X_test, out.y_test);
  // Standardise with training statistics only.
  const Eigen::RowVectorXd mean = out.X_train.colwise().mean();
  Eigen::RowVectorXd sd(kD);
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(kD); ++c) {
    const double var = (out.X_train.col(c).array() - mean(c)).square().mean();
    sd(c) = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  for (Eigen::MatrixXd* X : {&out.X_train, &out.X_test}) {
    X->rowwise() -= mean;
    X->array().rowwise() /= sd.array();
  }
  out.train_trials = train;
  for (std::size_t i : train) out.train_ids.push_back(i);
  return out;
}

double RunRegression(const RegressionData& data, pdp::RegressionStrategy strategy,
                     const std::vector<double>* budgets, const RegressionConfig& rc,
                     pdp::ThresholdPolicy policy, uint64_t seed) {
  pdp::RegressionHyper hyper;
  hyper.clip_norm = rc.clip_norm;
  hyper.epochs = rc.epochs;
  hyper.rate = rc.rate;
  hyper.batch_size = rc.batch_size;
  hyper.seed = seed;
  std::vector<double> train_budgets;
  if (budgets == nullptr) {
    hyper.noiseless = true;
    train_budgets.assign(data.train_trials.size(), 1.0);
    strategy = pdp::RegressionStrategy::kWeighting;
  } else {
    for (std::size_t i : data.train_trials) train_budgets.push_back((*budgets)[i]);
    if (strategy == pdp::RegressionStrategy::kSampling) {
      hyper.eps_ref = pdp::ChooseThreshold(train_budgets, policy);
    }
  }
  const pdp::MechanismResult fit = pdp::DpRegression(
      data.X_train, data.y_train, train_budgets, strategy, hyper, data.train_ids);
  const Eigen::VectorXd pred = pdp::PredictLinear(data.X_test, fit.coefficients);
  return RegressionUtility(pdp::RSquared(data.y_test, pred));
}

void Summarise(Cell& cell) {
  const auto& u = cell.utilities;
  cell.repetitions = static_cast<int>(u.size());
  const double n = static_cast<double>(u.size());
  cell.mean = std::accumulate(u.begin(), u.end(), 0.0) / n;
  double ss = 0;
  for (double v : u) ss += (v - cell.mean) * (v - cell.mean);
  cell.std = u.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  cell.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  if (!cell.abs_errors.empty()) {
    cell.abs_error_mean =
        std::accumulate(cell.abs_errors.begin(), cell.abs_errors.end(), 0.0) /
        static_cast<double>(cell.abs_errors.size());
  }
}

std::string ConfigComment(const BenchConfig& c) {
  return "# config=" + BenchConfigToJson(c).dump() + "\n";
}

}  // namespace

double QueryUtility(double truth, double noisy) {
  return 100.0 * std::max(0.0, 1.0 - std::abs(noisy - truth) /
                                         std::max(std::abs(truth), 1.0));
}

double RegressionUtility(double r_squared) {
  return std::clamp(r_squared, 0.0, 1.0);
}

const Cell& BenchReport::At(std::string_view task, std::string_view condition) const {
  for (const Cell& c : cells) {
    if (c.task == task && c.condition == condition) return c;
  }
  throw ArgumentError("no cell for " + std::string(task) + " x " +
                      std::string(condition));
}

BenchReport RunBenchmark(const BenchConfig& config) {
  CheckBenchConfig(config);
  BenchReport report;
  report.config = config;
  const bool has_plain = std::find(config.baselines.begin(), config.baselines.end(),
                                   Baseline::kPlain) != config.baselines.end();
  if (has_plain) report.conditions.push_back(std::string(kPlain));
  for (Baseline b : config.baselines) {
    if (b != Baseline::kPlain) report.conditions.push_back(std::string(BaselineName(b)));
  }
  for (const auto& m : config.mappings) report.conditions.push_back(m.name);
  for (BenchTask t : config.tasks) {
    for (const auto& cond : report.conditions) {
      report.cells.push_back({std::string(BenchTaskName(t)), cond, {}, {}});
    }
  }
  auto cell = [&](BenchTask t, const std::string& cond) -> Cell& {
    for (Cell& c : report.cells) {
      if (c.task == BenchTaskName(t) && c.condition == cond) return c;
    }
    throw ArgumentError("internal: missing cell");
  };

  for (int r = 0; r < config.repetitions; ++r) {
    const uint64_t rep_seed = DeriveSeed(config.seed, static_cast<uint64_t>(r));
    ingest::SynthSpec spec = config.synth;
    spec.seed = DeriveSeed(rep_seed, "synth");
    const ingest::Dataset d = ingest::SynthesizeDataset(spec);
    const auto features = events::ExtractAll(d);
    const std::vector<int> levels = Levels(config, d, features, rep_seed);
    const std::vector<ConditionBudgets> budgets = Budgets(config, levels, rep_seed);

    std::vector<double> indicator, fixations;
    for (std::size_t i = 0; i < d.trials.size(); ++i) {
      indicator.push_back(d.trials[i].category == config.count_category ? 1.0 : 0.0);
      fixations.push_back(features[i].fixation_count);
    }

    for (BenchTask t : config.tasks) {
      const uint64_t task_seed = DeriveSeed(rep_seed, BenchTaskName(t));
      if (IsQuery(t)) {
        const pdp::QueryKind kind = t == BenchTask::kCount    ? pdp::QueryKind::kCount
                                    : t == BenchTask::kMedian ? pdp::QueryKind::kMedian
                                                              : pdp::QueryKind::kMin;
        const auto& values = t == BenchTask::kCount ? indicator : fixations;
        if (has_plain) {
          const Outcome o = RunQuery(kind, values, nullptr, config.threshold_policy, task_seed);
          cell(t, std::string(kPlain)).utilities.push_back(o.utility);
          cell(t, std::string(kPlain)).abs_errors.push_back(o.abs_error);
        }
        for (const auto& cb : budgets) {
          const Outcome o =
              RunQuery(kind, values, &cb.budgets, config.threshold_policy, task_seed);
          cell(t, cb.name).utilities.push_back(o.utility);
          cell(t, cb.name).abs_errors.push_back(o.abs_error);
        }
      } else {
        const auto strategy = t == BenchTask::kRegressionWeighting
                                  ? pdp::RegressionStrategy::kWeighting
                                  : pdp::RegressionStrategy::kSampling;
        const RegressionData data = SplitRegression(
            d, features, config.regression.test_fraction, DeriveSeed(rep_seed, "split"));
        if (has_plain) {
          cell(t, std::string(kPlain))
              .utilities.push_back(
                  RunRegression(data, strategy, nullptr, config.regression,
                                config.threshold_policy, task_seed));
        }
        for (const auto& cb : budgets) {
          cell(t, cb.name).utilities.push_back(
              RunRegression(data, strategy, &cb.budgets, config.regression,
                            config.threshold_policy, task_seed));
        }
      }
    }
  }
  for (Cell& c : report.cells) Summarise(c);
  return report;
}

nlohmann::json ToJson(const BenchReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : r.cells) {
    nlohmann::json j = {{"task", c.task},
                        {"condition", c.condition},
                        {"mean", c.mean},
                        {"std", c.std},
                        {"median", c.median},
                        {"repetitions", c.repetitions},
                        {"utilities", c.utilities}};
    if (!c.abs_errors.empty()) {
      j["abs_error_mean"] = c.abs_error_mean;
      j["abs_errors"] = c.abs_errors;
    }
    cells.push_back(j);
  }
  return {{"format", "gazedp-bench/1"},
          {"config", BenchConfigToJson(r.config)},
          {"seed", r.config.seed},
          {"conditions", r.conditions},
          {"utility",
           {{"queries", "100*max(0,1-|noisy-true|/max(|true|,1))"},
            {"regression", "held-out R^2 clamped to [0,1]"}}},
          {"cells", cells}};
}

void WriteReportCsv(const BenchReport& r, std::ostream& out) {
  out << ConfigComment(r.config);
  std::vector<std::string> header = {"task"};
  for (const auto& c : r.conditions) header.push_back(c);
  out << csv::JoinLine(header) << '\n';
  for (BenchTask t : r.config.tasks) {
    std::vector<std::string> row = {std::string(BenchTaskName(t))};
    for (const auto& c : r.conditions) {
      row.push_back(csv::FormatDouble(r.At(BenchTaskName(t), c).mean));
    }
    out << csv::JoinLine(row) << '\n';
  }
  // Query rows again as raw mean absolute error.
  for (BenchTask t : r.config.tasks) {
    if (!IsQuery(t)) continue;
    std::vector<std::string> row = {std::string(BenchTaskName(t)) + "_abs_error"};
    for (const auto& c : r.conditions) {
      row.push_back(csv::FormatDouble(r.At(BenchTaskName(t), c).abs_error_mean));
    }
    out << csv::JoinLine(row) << '\n';
  }
}

void WriteMappingTables(const BenchConfig& c, std::ostream& out) {
  out << ConfigComment(c);
  out << "name,l,g,epsilon,kind,eps_min,eps_max,k\n";
  for (const auto& m : c.mappings) {
    for (const auto& row : dpmap::MappingTable(m.spec)) {
      out << csv::Escape(m.name) << ',' << row.level << ',' << csv::FormatDouble(row.g)
          << ',' << csv::FormatDouble(row.epsilon) << ','
          << dpmap::MappingKindName(m.spec.kind) << ','
          << csv::FormatDouble(m.spec.eps_min) << ','
          << csv::FormatDouble(m.spec.eps_max) << ',' << csv::FormatDouble(m.spec.k)
          << '\n';
    }
  }
}

void WritePlotData(const BenchReport& r, std::ostream& out) {
  out << ConfigComment(r.config);
  out << "x,y,series\n";
  for (const auto& m : r.config.mappings) {
    for (const auto& row : dpmap::MappingTable(m.spec)) {
      out << row.level << ',' << csv::FormatDouble(row.epsilon) << ','
          << csv::Escape("epsilon:" + m.name) << '\n';
    }
  }
  for (BenchTask t : r.config.tasks) {
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      out << i << ',' << csv::FormatDouble(r.At(BenchTaskName(t), r.conditions[i]).mean)
          << ',' << csv::Escape("utility:" + std::string(BenchTaskName(t))) << '\n';
    }
  }
}

void WriteBenchOutputs(const BenchReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("report.json");
    f << ToJson(r).dump(2) << '\n';
  }
  {
    auto f = open("report.csv");
    WriteReportCsv(r, f);
  }
  {
    auto f = open("mapping_table.csv");
    WriteMappingTables(r.config, f);
  }
  {
    auto f = open("plotdata.csv");
    WritePlotData(r, f);
  }
}

}  // namespace gazedp::bench

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

#ifndef GAZEDP_BENCH_BENCHMARK_H_
#define GAZEDP_BENCH_BENCHMARK_H_

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "gazedp/bench/config.h"
#include "json.hpp"

namespace gazedp::bench {

// Query utility: 100 * max(0, 1 - |noisy - truth| / max(|truth|, 1)).
double QueryUtility(double truth, double noisy);
// Regression utility: held-out R^2 clamped to [0, 1].
double RegressionUtility(double r_squared);

struct Cell {
  std::string task;
  std::string condition;
  std::vector<double> utilities;  // one per repetition
  std::vector<double> abs_errors;  // queries only
  double mean = 0;
  double std = 0;  // sample standard deviation; 0 for one repetition
  double median = 0;
  double abs_error_mean = 0;
  int repetitions = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<std::string> conditions;  // baselines then mappings
  std::vector<Cell> cells;              // task-major, condition-minor

  const Cell& At(std::string_view task, std::string_view condition) const;
};

// Each repetition r synthesises a dataset with seed derived from
// (config.seed, r), derives levels (true ratings, or out-of-fold predictions
// of a level classifier), maps them to budgets per condition and runs every
// task. The plain condition adds no noise. Deterministic in the config;
// `config.synth.seed` is replaced per repetition.
BenchReport RunBenchmark(const BenchConfig& config);

nlohmann::json ToJson(const BenchReport& r);

// Table-shaped grid: one row per task, one column per condition, mean
// utility in each cell, then one `<task>_abs_error` row per query task with
// the mean absolute error. A leading comment line carries the config.
void WriteReportCsv(const BenchReport& r, std::ostream& out);
// Per-mapping rows of (l, g, epsilon, ...), same comment line.
void WriteMappingTables(const BenchConfig& c, std::ostream& out);
// x,y,series triples: epsilon(l) curves per mapping and mean utility per
// condition index for every task.
void WritePlotData(const BenchReport& r, std::ostream& out);

// Writes report.json, report.csv, mapping_table.csv and plotdata.csv.
void WriteBenchOutputs(const BenchReport& r, const std::filesystem::path& dir);

}  // namespace gazedp::bench

#endif  // GAZEDP_BENCH_BENCHMARK_H_

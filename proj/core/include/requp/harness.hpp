// Copyright 2026 The requp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "requp/circuit.hpp"
#include "requp/cost.hpp"
#include "requp/data.hpp"
#include "requp/optim.hpp"

namespace requp {

enum class DatasetMode { Fixed, Random };

/// One coordinate of the experiment grid: which objective, problem,
/// minimizer and data protocol, at which circuit depth and training size.
struct ExperimentCell {
  CostKind cost = CostKind::Fidelity;
  Pattern pattern = Pattern::Circle;
  Method method = Method::LBFGS;
  DatasetMode mode = DatasetMode::Fixed;
  int layers = 5;
  int train_size = 1;
  int test_size = 4000;
  /// 0 means the mode default: 1 repetition for Fixed, 20 for Random.
  int repetitions = 0;
  /// Arbitrary but pinned; recorded in every output row so results stay
  /// reproducible under a changed default.
  std::uint64_t master_seed = 11;
  /// When set, the decision threshold is tuned on the training set after
  /// optimization instead of staying at 0.5.
  bool tune_bias = false;
  OptimizeOptions opts{};
};

int resolved_repetitions(const ExperimentCell& cell);

struct RepetitionOutcome {
  std::uint64_t rep_seed = 0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double lambda = 0.5;
  double final_cost = 0.0;
  int n_evals = 0;
  double wall_time_s = 0.0;
  /// Non-empty when the optimizer failed; the grid keeps going.
  std::string error;
};

/// Aggregated result for one cell, the row type of the results CSV.
struct AccuracyRecord {
  CostKind cost = CostKind::Fidelity;
  Pattern pattern = Pattern::Circle;
  Method method = Method::LBFGS;
  DatasetMode mode = DatasetMode::Fixed;
  int layers = 0;
  int train_size = 0;
  int test_size = 0;
  int repetitions = 0;
  std::uint64_t master_seed = 0;

  double mean_train_acc = 0.0, min_train_acc = 0.0, max_train_acc = 0.0;
  double mean_test_acc = 0.0, min_test_acc = 0.0, max_test_acc = 0.0;
  double mean_final_cost = 0.0;
  long total_evals = 0;
  double wall_time_s = 0.0;

  std::vector<std::uint64_t> rep_seeds;
  /// Per-repetition detail; kept in memory, not serialized to CSV.
  std::vector<RepetitionOutcome> repetitions_detail;
};

/// Seed plumbing. Every repetition owns one seed derived from the master
/// seed and the cell coordinates; train/test/init streams split off it.
/// Data seeds deliberately exclude cost and method so that all minimizers
/// of one comparison see identical datasets, and exclude train_size so that
/// fixed-mode training sets of growing size are nested prefixes of one
/// stream.
std::uint64_t repetition_seed(const ExperimentCell& cell, int rep_index);
std::uint64_t train_data_seed(const ExperimentCell& cell, int rep_index);
std::uint64_t test_data_seed(const ExperimentCell& cell, int rep_index);
std::uint64_t init_seed(const ExperimentCell& cell, int rep_index);

/// Angles uniform in [-pi, pi], weights uniform in [-1, 1], drawn in
/// parameter-layout order from one SplitMix64 stream.
ParamVector initial_params(const CircuitShape& shape, std::uint64_t seed);

RepetitionOutcome run_repetition(const ExperimentCell& cell, int rep_index);

AccuracyRecord run_cell(const ExperimentCell& cell, int workers = 1);

/// A training-size sweep of one cell template.
struct SweepSpec {
  ExperimentCell cell;
  std::vector<int> train_sizes;
};

/// Runs every (cell, size) of the sweep list, parallelizing repetitions
/// across `workers` threads. The checkpoint CSV is rewritten (sorted,
/// canonical) as each cell completes; on a re-run, cells already present in
/// the checkpoint are skipped, so an interrupted sweep resumes where it
/// stopped and converges to the identical file.
std::vector<AccuracyRecord> run_sweeps(const std::vector<SweepSpec>& sweeps,
                                       int workers,
                                       const std::string& checkpoint_csv);

std::vector<AccuracyRecord> run_sweep(const ExperimentCell& cell_template,
                                      const std::vector<int>& train_sizes,
                                      int workers,
                                      const std::string& checkpoint_csv);

/// Results CSV. Schema (one header row, LF endings):
///   cost,pattern,method,mode,layers,train_size,test_size,reps,
///   mean_train_acc,min_train_acc,max_train_acc,
///   mean_test_acc,min_test_acc,max_test_acc,
///   mean_final_cost,total_evals,master_seed,rep_seeds
/// with rep_seeds a ';'-joined list.
void emit_csv(const std::vector<AccuracyRecord>& records,
              const std::string& path);
std::vector<AccuracyRecord> load_results_csv(const std::string& path);

/// Line chart of mean train (dashed) and mean test (solid) accuracy versus
/// training size, as a standalone SVG document.
void emit_svg(const std::vector<AccuracyRecord>& records,
              const std::string& path);

/// Experiment presets:
///   "fig4"  - the full 32-case grid (2 costs x 2 patterns x 4 methods x
///             2 dataset modes), each swept over the mode's size ladder.
///   "figA1" - fidelity / circle / fixed / L-BFGS benchmark up to 250
///             training samples.
///   "figA2" - layer sweep N = 1..5, fidelity / circle / random / L-BFGS.
std::vector<SweepSpec> preset(const std::string& name,
                              std::uint64_t master_seed);

/// Default training-size ladders per dataset mode.
std::vector<int> default_train_sizes(DatasetMode mode);

const char* to_string(DatasetMode mode);
DatasetMode mode_from_string(const std::string& name);

/// Flat key=value config file; '#' starts a comment. Keys mirror the CLI
/// flags (cost, pattern, method, mode, layers, train-sizes, test-size,
/// reps, seed, out, tune-bias, workers). Unknown keys are an error.
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::vector<int> parse_size_list(const std::string& text);

std::string cell_file_stem(const ExperimentCell& cell);

}  // namespace requp

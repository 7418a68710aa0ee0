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

#include "requp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "requp/rng.hpp"

namespace requp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stream tags for seed splitting; persisted implicitly through every
// recorded seed, so their values must never change.
constexpr std::uint64_t kTagRepetition = 0x01;
constexpr std::uint64_t kTagTrainData = 0x02;
constexpr std::uint64_t kTagTestData = 0x03;
constexpr std::uint64_t kTagInit = 0x04;

std::uint64_t mode_word(DatasetMode mode) {
  return mode == DatasetMode::Fixed ? 0 : 1;
}

std::uint64_t pattern_word(Pattern pattern) {
  return pattern == Pattern::Circle ? 0 : 1;
}

int data_rep_word(const ExperimentCell& cell, int rep_index) {
  // Fixed mode pins the data regardless of the repetition slot.
  return cell.mode == DatasetMode::Fixed ? 0 : rep_index;
}

void run_jobs(int n_jobs, int workers, const std::function<void(int)>& job) {
  workers = std::max(1, std::min(workers, n_jobs));
  if (workers == 1) {
    for (int i = 0; i < n_jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n_jobs) return;
        job(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

bool same_coordinates(const AccuracyRecord& a, const AccuracyRecord& b) {
  return a.cost == b.cost && a.pattern == b.pattern && a.method == b.method &&
         a.mode == b.mode && a.layers == b.layers &&
         a.train_size == b.train_size && a.test_size == b.test_size &&
         a.repetitions == b.repetitions && a.master_seed == b.master_seed;
}

std::tuple<int, int, int, int, int, int, int> sort_key(
    const AccuracyRecord& r) {
  return {static_cast<int>(r.cost), static_cast<int>(r.pattern),
          static_cast<int>(r.method), static_cast<int>(r.mode), r.layers,
          r.train_size, r.test_size};
}

}  // namespace

int resolved_repetitions(const ExperimentCell& cell) {
  if (cell.repetitions > 0) return cell.repetitions;
  return cell.mode == DatasetMode::Fixed ? 1 : 20;
}

std::uint64_t repetition_seed(const ExperimentCell& cell, int rep_index) {
  return derive_seed({cell.master_seed, kTagRepetition,
                      static_cast<std::uint64_t>(cell.cost),
                      pattern_word(cell.pattern),
                      static_cast<std::uint64_t>(cell.method),
                      mode_word(cell.mode),
                      static_cast<std::uint64_t>(cell.layers),
                      static_cast<std::uint64_t>(cell.train_size),
                      static_cast<std::uint64_t>(cell.test_size),
                      static_cast<std::uint64_t>(rep_index)});
}

std::uint64_t train_data_seed(const ExperimentCell& cell, int rep_index) {
  return derive_seed(
      {cell.master_seed, kTagTrainData, pattern_word(cell.pattern),
       mode_word(cell.mode),
       static_cast<std::uint64_t>(data_rep_word(cell, rep_index))});
}

std::uint64_t test_data_seed(const ExperimentCell& cell, int rep_index) {
  return derive_seed(
      {cell.master_seed, kTagTestData, pattern_word(cell.pattern),
       mode_word(cell.mode),
       static_cast<std::uint64_t>(data_rep_word(cell, rep_index))});
}

std::uint64_t init_seed(const ExperimentCell& cell, int rep_index) {
  return derive_seed({repetition_seed(cell, rep_index), kTagInit});
}

ParamVector initial_params(const CircuitShape& shape, std::uint64_t seed) {
  const int count = param_count(shape);
  ParamVector params(static_cast<std::size_t>(count));
  SplitMix64 rng(seed);
  const int stride = 3 + shape.data_dim;
  for (int layer = 0; layer < shape.layers; ++layer) {
    for (int k = 0; k < 3; ++k) {
      params[static_cast<std::size_t>(layer * stride + k)] =
          rng.next_range(-kPi, kPi);
    }
    for (int k = 0; k < shape.data_dim; ++k) {
      params[static_cast<std::size_t>(layer * stride + 3 + k)] =
          rng.next_symmetric();
    }
  }
  return params;
}

RepetitionOutcome run_repetition(const ExperimentCell& cell, int rep_index) {
  RepetitionOutcome out;
  out.rep_seed = repetition_seed(cell, rep_index);
  const auto start = std::chrono::steady_clock::now();
  try {
    const CircuitShape shape{cell.layers, 2};
    const Dataset train =
        generate(cell.pattern, cell.train_size, train_data_seed(cell, rep_index));
    const Dataset test =
        generate(cell.pattern, cell.test_size, test_data_seed(cell, rep_index));
    const ParamVector x0 = initial_params(shape, init_seed(cell, rep_index));

    const Objective objective = [&](const std::vector<double>& p) {
      return cost_value(cell.cost, shape, p, train);
    };
    // Finite differences are the default gradient for both costs; the
    // gradient-based kernels build them from the objective.
    const OptimizerReport report =
        minimize(objective, x0, cell.method, cell.opts);

    out.final_cost = report.f_best;
    out.n_evals = report.n_evals;
    out.lambda =
        cell.tune_bias ? tune_bias(shape, report.x_best, train) : 0.5;
    out.train_acc = accuracy(shape, report.x_best, out.lambda, train);
    out.test_acc = accuracy(shape, report.x_best, out.lambda, test);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

namespace {

AccuracyRecord aggregate(const ExperimentCell& cell,
                         std::vector<RepetitionOutcome> reps) {
  AccuracyRecord rec;
  rec.cost = cell.cost;
  rec.pattern = cell.pattern;
  rec.method = cell.method;
  rec.mode = cell.mode;
  rec.layers = cell.layers;
  rec.train_size = cell.train_size;
  rec.test_size = cell.test_size;
  rec.repetitions = static_cast<int>(reps.size());
  rec.master_seed = cell.master_seed;

  rec.min_train_acc = 1.0;
  rec.min_test_acc = 1.0;
  int completed = 0;
  for (const RepetitionOutcome& r : reps) {
    rec.rep_seeds.push_back(r.rep_seed);
    rec.wall_time_s += r.wall_time_s;
    if (!r.error.empty()) continue;
    ++completed;
    rec.mean_train_acc += r.train_acc;
    rec.mean_test_acc += r.test_acc;
    rec.mean_final_cost += r.final_cost;
    rec.total_evals += r.n_evals;
    rec.min_train_acc = std::min(rec.min_train_acc, r.train_acc);
    rec.max_train_acc = std::max(rec.max_train_acc, r.train_acc);
    rec.min_test_acc = std::min(rec.min_test_acc, r.test_acc);
    rec.max_test_acc = std::max(rec.max_test_acc, r.test_acc);
  }
  if (completed > 0) {
    rec.mean_train_acc /= completed;
    rec.mean_test_acc /= completed;
    rec.mean_final_cost /= completed;
  } else {
    rec.min_train_acc = 0.0;
    rec.min_test_acc = 0.0;
  }
  rec.repetitions_detail = std::move(reps);
  return rec;
}

}  // namespace

AccuracyRecord run_cell(const ExperimentCell& cell, int workers) {
  const int reps = resolved_repetitions(cell);
  std::vector<RepetitionOutcome> outcomes(static_cast<std::size_t>(reps));
  run_jobs(reps, workers, [&](int r) {
    outcomes[static_cast<std::size_t>(r)] = run_repetition(cell, r);
  });
  return aggregate(cell, std::move(outcomes));
}

std::vector<AccuracyRecord> run_sweeps(const std::vector<SweepSpec>& sweeps,
                                       int workers,
                                       const std::string& checkpoint_csv) {
  // Expand sweeps into concrete cells.
  std::vector<ExperimentCell> cells;
  for (const SweepSpec& sweep : sweeps) {
    if (sweep.train_sizes.empty()) {
      throw std::invalid_argument("run_sweeps: empty training-size list");
    }
    for (int size : sweep.train_sizes) {
      ExperimentCell cell = sweep.cell;
      cell.train_size = size;
      cells.push_back(cell);
    }
  }

  std::vector<AccuracyRecord> done;
  if (!checkpoint_csv.empty()) {
    std::ifstream probe(checkpoint_csv);
    if (probe.good()) done = load_results_csv(checkpoint_csv);
  }

  // Skip cells already present in the checkpoint.
  std::vector<ExperimentCell> pending;
  for (const ExperimentCell& cell : cells) {
    AccuracyRecord probe = aggregate(cell, {});
    probe.repetitions = resolved_repetitions(cell);
    const bool seen = std::any_of(
        done.begin(), done.end(),
        [&](const AccuracyRecord& r) { return same_coordinates(r, probe); });
    if (!seen) pending.push_back(cell);
  }

  // Flatten (cell, repetition) into one job list so small cells cannot
  // starve the pool, then aggregate and checkpoint as cells complete.
  struct CellProgress {
    std::vector<RepetitionOutcome> outcomes;
    std::atomic<int> remaining{0};
  };
  std::vector<CellProgress> progress(pending.size());
  std::vector<std::pair<int, int>> jobs;  // (cell index, rep index)
  for (std::size_t c = 0; c < pending.size(); ++c) {
    const int reps = resolved_repetitions(pending[c]);
    progress[c].outcomes.resize(static_cast<std::size_t>(reps));
    progress[c].remaining.store(reps);
    for (int r = 0; r < reps; ++r) {
      jobs.emplace_back(static_cast<int>(c), r);
    }
  }

  std::mutex done_mutex;
  run_jobs(static_cast<int>(jobs.size()), workers, [&](int j) {
    const auto [c, r] = jobs[static_cast<std::size_t>(j)];
    CellProgress& p = progress[static_cast<std::size_t>(c)];
    p.outcomes[static_cast<std::size_t>(r)] =
        run_repetition(pending[static_cast<std::size_t>(c)], r);
    if (p.remaining.fetch_sub(1) == 1) {
      AccuracyRecord rec = aggregate(pending[static_cast<std::size_t>(c)],
                                     std::move(p.outcomes));
      std::lock_guard<std::mutex> lock(done_mutex);
      done.push_back(std::move(rec));
      if (!checkpoint_csv.empty()) {
        std::stable_sort(done.begin(), done.end(),
                         [](const AccuracyRecord& a, const AccuracyRecord& b) {
                           return sort_key(a) < sort_key(b);
                         });
        emit_csv(done, checkpoint_csv);
      }
    }
  });

  std::stable_sort(done.begin(), done.end(),
                   [](const AccuracyRecord& a, const AccuracyRecord& b) {
                     return sort_key(a) < sort_key(b);
                   });
  return done;
}

std::vector<AccuracyRecord> run_sweep(const ExperimentCell& cell_template,
                                      const std::vector<int>& train_sizes,
                                      int workers,
                                      const std::string& checkpoint_csv) {
  return run_sweeps({{cell_template, train_sizes}}, workers, checkpoint_csv);
}

std::vector<int> default_train_sizes(DatasetMode mode) {
  if (mode == DatasetMode::Random) {
    std::vector<int> sizes;
    for (int s = 5; s <= 70; s += 5) sizes.push_back(s);
    return sizes;
  }
  return {1, 25, 50, 75, 100, 125, 150, 200, 250};
}

std::vector<SweepSpec> preset(const std::string& name,
                              std::uint64_t master_seed) {
  std::vector<SweepSpec> sweeps;
  if (name == "fig4") {
    for (CostKind cost : {CostKind::Fidelity, CostKind::TraceDistance}) {
      for (Pattern pattern : {Pattern::Circle, Pattern::Line}) {
        for (Method method : {Method::LBFGS, Method::COBYLA,
                              Method::NelderMead, Method::SLSQP}) {
          for (DatasetMode mode : {DatasetMode::Fixed, DatasetMode::Random}) {
            ExperimentCell cell;
            cell.cost = cost;
            cell.pattern = pattern;
            cell.method = method;
            cell.mode = mode;
            cell.layers = 5;
            cell.master_seed = master_seed;
            sweeps.push_back({cell, default_train_sizes(mode)});
          }
        }
      }
    }
    return sweeps;
  }
  if (name == "figA1") {
    ExperimentCell cell;
    cell.cost = CostKind::Fidelity;
    cell.pattern = Pattern::Circle;
    cell.method = Method::LBFGS;
    cell.mode = DatasetMode::Fixed;
    cell.layers = 5;
    cell.master_seed = master_seed;
    sweeps.push_back({cell, default_train_sizes(DatasetMode::Fixed)});
    return sweeps;
  }
  if (name == "figA2") {
    for (int layers = 1; layers <= 5; ++layers) {
      ExperimentCell cell;
      cell.cost = CostKind::Fidelity;
      cell.pattern = Pattern::Circle;
      cell.method = Method::LBFGS;
      cell.mode = DatasetMode::Random;
      cell.layers = layers;
      cell.master_seed = master_seed;
      sweeps.push_back({cell, default_train_sizes(DatasetMode::Random)});
    }
    return sweeps;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

const char* to_string(DatasetMode mode) {
  return mode == DatasetMode::Fixed ? "fixed" : "random";
}

DatasetMode mode_from_string(const std::string& name) {
  if (name == "fixed") return DatasetMode::Fixed;
  if (name == "random") return DatasetMode::Random;
  throw std::invalid_argument("unknown dataset mode: " + name);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  static const std::vector<std::string> kKnownKeys = {
      "cost", "pattern", "method", "mode", "layers", "train-sizes",
      "test-size", "reps", "seed", "out", "tune-bias", "workers"};
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: " + path + ":" +
                               std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
        kKnownKeys.end()) {
      throw std::runtime_error("config: " + path + ":" +
                               std::to_string(lineno) + ": unknown key '" +
                               key + "'");
    }
    values[key] = value;
  }
  return values;
}

std::vector<int> parse_size_list(const std::string& text) {
  std::vector<int> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string field = text.substr(start, comma - start);
    if (!field.empty()) {
      std::size_t consumed = 0;
      int value = 0;
      try {
        value = std::stoi(field, &consumed);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad training size '" + field + "'");
      }
      if (consumed != field.size() || value < 1) {
        throw std::invalid_argument("bad training size '" + field + "'");
      }
      sizes.push_back(value);
    }
    start = comma + 1;
  }
  if (sizes.empty()) {
    throw std::invalid_argument("empty training-size list");
  }
  return sizes;
}

std::string cell_file_stem(const ExperimentCell& cell) {
  std::string stem;
  stem += to_string(cell.cost);
  stem += '_';
  stem += to_string(cell.pattern);
  stem += '_';
  stem += to_string(cell.method);
  stem += '_';
  stem += to_string(cell.mode);
  stem += "_N";
  stem += std::to_string(cell.layers);
  return stem;
}

}  // namespace requp

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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "requp/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitBattery = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir + ": " +
                  ec.message());
  }
}

void write_sweep_outputs(const std::vector<requp::AccuracyRecord>& records,
                         const std::string& out_dir) {
  // One SVG per cell coordinate (everything but train_size), plus the
  // combined CSV that run_sweeps already checkpoints.
  std::vector<std::string> seen;
  for (const requp::AccuracyRecord& r : records) {
    requp::ExperimentCell cell;
    cell.cost = r.cost;
    cell.pattern = r.pattern;
    cell.method = r.method;
    cell.mode = r.mode;
    cell.layers = r.layers;
    const std::string stem = requp::cell_file_stem(cell);
    if (std::find(seen.begin(), seen.end(), stem) != seen.end()) continue;
    seen.push_back(stem);
    std::vector<requp::AccuracyRecord> group;
    for (const requp::AccuracyRecord& other : records) {
      requp::ExperimentCell other_cell;
      other_cell.cost = other.cost;
      other_cell.pattern = other.pattern;
      other_cell.method = other.method;
      other_cell.mode = other.mode;
      other_cell.layers = other.layers;
      if (requp::cell_file_stem(other_cell) == stem) group.push_back(other);
    }
    requp::emit_svg(group, out_dir + "/" + stem + ".svg");
  }
}

struct RunArgs {
  std::string cost = "fidelity";
  std::string pattern = "circle";
  std::string method = "lbfgs";
  std::string mode = "fixed";
  int layers = 5;
  std::string train_sizes;
  int test_size = 4000;
  int reps = 0;
  std::uint64_t seed = 11;
  std::string out_dir;
  bool tune_bias = false;
  int workers = default_workers();
  std::string config_path;
};

// Config file supplies defaults; flags given on the command line win.
void apply_config(const std::map<std::string, std::string>& config,
                  const CLI::App& cmd, RunArgs& args) {
  const auto unset = [&](const std::string& flag) {
    return cmd.get_option(flag)->count() == 0;
  };
  for (const auto& [key, value] : config) {
    if (key == "cost" && unset("--cost")) args.cost = value;
    else if (key == "pattern" && unset("--pattern")) args.pattern = value;
    else if (key == "method" && unset("--method")) args.method = value;
    else if (key == "mode" && unset("--mode")) args.mode = value;
    else if (key == "layers" && unset("--layers")) args.layers = std::stoi(value);
    else if (key == "train-sizes" && unset("--train-sizes")) args.train_sizes = value;
    else if (key == "test-size" && unset("--test-size")) args.test_size = std::stoi(value);
    else if (key == "reps" && unset("--reps")) args.reps = std::stoi(value);
    else if (key == "seed" && unset("--seed")) args.seed = std::stoull(value);
    else if (key == "out" && unset("--out")) args.out_dir = value;
    else if (key == "tune-bias" && unset("--tune-bias"))
      args.tune_bias = value == "true" || value == "1" || value == "yes";
    else if (key == "workers" && unset("--workers")) args.workers = std::stoi(value);
  }
}

int run_command(const CLI::App& cmd, RunArgs& args) {
  if (!args.config_path.empty()) {
    apply_config(requp::parse_config_file(args.config_path), cmd, args);
  }
  if (args.out_dir.empty()) {
    throw CLI::ValidationError("--out", "an output directory is required");
  }
  requp::ExperimentCell cell;
  cell.cost = requp::cost_from_string(args.cost);
  cell.pattern = requp::pattern_from_string(args.pattern);
  cell.method = requp::method_from_string(args.method);
  cell.mode = requp::mode_from_string(args.mode);
  cell.layers = args.layers;
  cell.test_size = args.test_size;
  cell.repetitions = args.reps;
  cell.master_seed = args.seed;
  cell.tune_bias = args.tune_bias;

  const std::vector<int> sizes = args.train_sizes.empty()
                                     ? requp::default_train_sizes(cell.mode)
                                     : requp::parse_size_list(args.train_sizes);
  ensure_out_dir(args.out_dir);
  const std::string csv_path = args.out_dir + "/results.csv";
  const auto records = requp::run_sweeps({{cell, sizes}}, args.workers, csv_path);
  write_sweep_outputs(records, args.out_dir);
  std::printf("wrote %zu records to %s\n", records.size(), csv_path.c_str());
  return kExitOk;
}

int preset_command(const std::string& name, std::uint64_t seed,
                   const std::string& out_dir, int workers) {
  ensure_out_dir(out_dir);
  const auto sweeps = requp::preset(name, seed);
  const std::string csv_path = out_dir + "/" + name + ".csv";
  const auto records = requp::run_sweeps(sweeps, workers, csv_path);
  write_sweep_outputs(records, out_dir);
  std::printf("wrote %zu records to %s\n", records.size(), csv_path.c_str());
  return kExitOk;
}

int plot_command(const std::string& in_csv, const std::string& out_svg) {
  const auto records = requp::load_results_csv(in_csv);
  if (records.empty()) {
    throw IoError(in_csv + " holds no records");
  }
  requp::emit_svg(records, out_svg);
  std::printf("wrote %s\n", out_svg.c_str());
  return kExitOk;
}

int validate_command() {
  const auto results = requp::run_validation_battery();
  bool all_passed = true;
  for (const requp::BatteryCase& r : results) {
    std::printf("%-12s %-10s f_best=%-13.6g evals=%-6d %s\n",
                r.function_name.c_str(), requp::to_string(r.method), r.f_best,
                r.n_evals, r.passed ? "pass" : "FAIL");
    all_passed = all_passed && r.passed;
  }
  std::printf("validation battery: %s\n", all_passed ? "pass" : "FAIL");
  return all_passed ? kExitOk : kExitBattery;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "requp - single-qubit data re-uploading classifier workbench"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Train one configuration over a training-size sweep");
  run->add_option("--cost", run_args.cost, "fidelity | trace");
  run->add_option("--pattern", run_args.pattern, "circle | line");
  run->add_option("--method", run_args.method,
                  "lbfgs | cobyla | neldermead | slsqp");
  run->add_option("--mode", run_args.mode, "fixed | random");
  run->add_option("--layers", run_args.layers, "circuit layers N");
  run->add_option("--train-sizes", run_args.train_sizes,
                  "comma-separated training sizes");
  run->add_option("--test-size", run_args.test_size, "test set size");
  run->add_option("--reps", run_args.reps,
                  "repetitions (default: 1 fixed / 20 random)");
  run->add_option("--seed", run_args.seed, "master seed");
  run->add_option("--out", run_args.out_dir, "output directory");
  run->add_flag("--tune-bias", run_args.tune_bias,
                "tune the decision threshold on the training set");
  run->add_option("--workers", run_args.workers, "worker thread count");
  run->add_option("--config", run_args.config_path,
                  "key=value config file; command-line flags win");

  std::string grid_preset = "fig4";
  std::string grid_out;
  std::uint64_t grid_seed = 11;
  int grid_workers = default_workers();
  CLI::App* grid =
      app.add_subcommand("grid", "Run a full experiment grid preset");
  grid->add_option("--preset", grid_preset, "fig4");
  grid->add_option("--out", grid_out, "output directory")->required();
  grid->add_option("--seed", grid_seed, "master seed");
  grid->add_option("--workers", grid_workers, "worker thread count");

  std::string sweep_preset;
  std::string sweep_out;
  std::uint64_t sweep_seed = 11;
  int sweep_workers = default_workers();
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a named benchmark sweep preset");
  sweep->add_option("--preset", sweep_preset, "figA1 | figA2")->required();
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--workers", sweep_workers, "worker thread count");

  std::string plot_in, plot_out;
  CLI::App* plot =
      app.add_subcommand("plot", "Render a results CSV as an SVG chart");
  plot->add_option("--in", plot_in, "results CSV")->required();
  plot->add_option("--out", plot_out, "output SVG")->required();

  CLI::App* validate = app.add_subcommand(
      "validate-optimizers",
      "Run the optimizer battery on standard test functions");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(*run, run_args);
    if (grid->parsed())
      return preset_command(grid_preset, grid_seed, grid_out, grid_workers);
    if (sweep->parsed())
      return preset_command(sweep_preset, sweep_seed, sweep_out, sweep_workers);
    if (plot->parsed()) return plot_command(plot_in, plot_out);
    if (validate->parsed()) return validate_command();
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // Filesystem / parse failures from the harness surface as I/O errors.
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

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

// End-to-end checks of the command-line surface: subcommands, exit codes,
// and on-disk outputs. The binary path arrives via the REQUP_CLI
// environment variable set by CMake.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "requp/harness.hpp"

namespace {

std::string cli_path() {
  const char* path = std::getenv("REQUP_CLI");
  REQUIRE_MESSAGE(path != nullptr, "REQUP_CLI must point at the requp binary");
  return path;
}

int run_cli(const std::string& args) {
  const std::string command = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const char* kTinyRun =
    "run --cost fidelity --pattern circle --method cobyla --mode fixed "
    "--layers 1 --train-sizes 2,3 --test-size 20 --seed 7";

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("run") == 1);                       // missing --out
  CHECK(run_cli("run --method sgd --out /tmp/x") == 1);
  CHECK(run_cli("sweep --preset figZ9 --out /tmp/x") == 1);
  CHECK(run_cli("") == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run --help") == 0);
}

TEST_CASE("run produces results and is reproducible") {
  const auto dir = temp_dir("requp_cli_run");
  const std::string out_flag = " --out " + dir.string();
  REQUIRE(run_cli(std::string(kTinyRun) + out_flag) == 0);

  const auto csv = dir / "results.csv";
  REQUIRE(std::filesystem::exists(csv));
  const auto records = requp::load_results_csv(csv.string());
  CHECK(records.size() == 2);
  CHECK(records[0].train_size == 2);
  CHECK(records[1].train_size == 3);
  CHECK(records[0].master_seed == 7);

  const bool svg_found =
      std::filesystem::exists(dir / "fidelity_circle_cobyla_fixed_N1.svg");
  CHECK(svg_found);

  // A second identical run resumes from the checkpoint and leaves the
  // identical file behind.
  const std::string first = read_file(csv);
  REQUIRE(run_cli(std::string(kTinyRun) + out_flag) == 0);
  CHECK(read_file(csv) == first);

  std::filesystem::remove_all(dir);
}

TEST_CASE("plot renders a CSV and flags I/O failures") {
  const auto dir = temp_dir("requp_cli_plot");
  const std::string out_flag = " --out " + dir.string();
  REQUIRE(run_cli(std::string(kTinyRun) + out_flag) == 0);

  const auto svg = dir / "replot.svg";
  CHECK(run_cli("plot --in " + (dir / "results.csv").string() + " --out " +
                svg.string()) == 0);
  CHECK(std::filesystem::exists(svg));

  CHECK(run_cli("plot --in /nonexistent/r.csv --out /tmp/x.svg") == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto dir = temp_dir("requp_cli_config");
  std::filesystem::create_directories(dir);
  const auto config = dir / "experiment.cfg";
  {
    std::ofstream out(config);
    out << "method = neldermead\n";
    out << "layers = 1\n";
    out << "train-sizes = 2\n";
    out << "test-size = 10\n";
    out << "mode = fixed\n";
    out << "seed = 9\n";
  }

  const auto out_a = dir / "from_config";
  REQUIRE(run_cli("run --config " + config.string() + " --out " +
                  out_a.string()) == 0);
  auto records = requp::load_results_csv((out_a / "results.csv").string());
  REQUIRE(records.size() == 1);
  CHECK(records[0].method == requp::Method::NelderMead);
  CHECK(records[0].master_seed == 9);

  const auto out_b = dir / "overridden";
  REQUIRE(run_cli("run --config " + config.string() + " --method cobyla " +
                  "--out " + out_b.string()) == 0);
  records = requp::load_results_csv((out_b / "results.csv").string());
  REQUIRE(records.size() == 1);
  CHECK(records[0].method == requp::Method::COBYLA);

  std::filesystem::remove_all(dir);
}

TEST_CASE("validate-optimizers exits 0 when the battery passes") {
  CHECK(run_cli("validate-optimizers") == 0);
}

// Copyright 2026 The polysim authors
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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "polysim/config.hpp"
#include "polysim/experiments.hpp"

using namespace polysim;

TEST_CASE("config parsing: sections, types, comments") {
  const Config cfg = Config::parse_string(R"(
# a comment
[common]
seed = 7
threads = 2
[convergence]
t_grid = 10, 100,1000
beta_star = 1.5
)");
  CHECK(cfg.get_int("common", "seed", 0) == 7);
  CHECK(cfg.get_double("convergence", "beta_star", 0.0) == 1.5);
  const auto grid = cfg.get_double_list("convergence", "t_grid", {});
  REQUIRE(grid.size() == 3);
  CHECK(grid[2] == 1000.0);
  CHECK(cfg.get_int("common", "missing", 42) == 42);
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS((void)Config::parse_string("[unterminated\n"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse_string("novalue\n"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse_string("[s]\na = 1\na = 2\n"),
                  ConfigError);
  CHECK_THROWS_AS((void)Config::parse_string("[s]\na = abc\n")
                      .get_double("s", "a", 0.0),
                  ConfigError);
}

TEST_CASE("unknown experiments, sections and keys are usage errors") {
  RunOptions opts;
  opts.experiment = "no-such-experiment";
  CHECK(run_experiment_capture(opts).exit_code == 2);

  const auto with_config = [&](const std::string& text) {
    const std::string path =
        (std::filesystem::temp_directory_path() / "polysim_bad.cfg").string();
    std::ofstream(path) << text;
    RunOptions o;
    o.experiment = "scaling-audit";
    o.config_path = path;
    return run_experiment_capture(o).exit_code;
  };
  CHECK(with_config("[no-such-section]\nx = 1\n") == 2);
  CHECK(with_config("[scaling-audit]\nbogus_key = 1\n") == 2);
  CHECK(with_config("[common]\nbogus = 1\n") == 2);
  // sections of other experiments are validated but do not block the run
  CHECK(with_config("[wt-mean]\nbetas = 0.5\n") == 0);
}

TEST_CASE("scaling-audit runs clean and writes well-formed outputs") {
  RunOptions opts;
  opts.experiment = "scaling-audit";
  opts.seed = 5;
  const RunOutputs out = run_experiment_capture(opts);
  CHECK(out.exit_code == 0);
  CHECK(out.csv.rfind("experiment,t,statistic,value,stderr,n\n", 0) == 0);
  CHECK(out.csv.find("ratio_a[fixed-nu-r]") != std::string::npos);
  CHECK(out.summary.find("RESULT: PASS") != std::string::npos);
  CHECK(out.manifest_json.find("\"experiment\": \"scaling-audit\"") !=
        std::string::npos);
}

TEST_CASE("experiment registry lists the full experiment set") {
  const auto names = experiment_names();
  for (const char* expected :
       {"env-check", "wt-mean", "zt-mean", "chaos-vs-direct", "covariance",
        "fock-norms", "she-moments", "p2p-mean", "convergence",
        "p2p-convergence", "poisson-she-residual", "scaling-audit",
        "field-marginal"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  CHECK(names.size() == 13);
}

TEST_CASE("results are bit-identical across thread counts") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "polysim_det.cfg").string();
  std::ofstream(path) << "[env-check]\nn_envs = 3000\n";
  std::string first;
  for (int threads : {1, 4}) {
    RunOptions opts;
    opts.experiment = "env-check";
    opts.config_path = path;
    opts.seed = 11;
    opts.threads = threads;
    const RunOutputs out = run_experiment_capture(opts);
    CHECK(out.exit_code == 0);
    if (first.empty())
      first = out.csv;
    else
      CHECK(first == out.csv);
  }
}

TEST_CASE("runner writes artifacts into the requested directory") {
  const auto dir =
      std::filesystem::temp_directory_path() / "polysim_run_out";
  std::filesystem::remove_all(dir);
  RunOptions opts;
  opts.experiment = "scaling-audit";
  opts.out_dir = dir.string();
  opts.seed = 3;
  CHECK(run_experiment(opts) == 0);
  CHECK(std::filesystem::exists(dir / "results.csv"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  CHECK(std::filesystem::exists(dir / "manifest.json"));
}

TEST_CASE("t-grid overrides reach the experiment section") {
  RunOptions opts;
  opts.experiment = "scaling-audit";
  opts.t_grid = "100,1000,10000";
  opts.seed = 2;
  const RunOutputs out = run_experiment_capture(opts);
  CHECK(out.exit_code == 0);
  CHECK(out.csv.find(",10000,") != std::string::npos);
  CHECK(out.csv.find(",1000000,") == std::string::npos);
}

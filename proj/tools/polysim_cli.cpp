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

// Experiment runner built on the polysim C API.
//
//   polysim run <experiment> [--config FILE] [--seed N] [--out DIR]
//               [--t-grid a,b,c] [--threads N]
//   polysim list
//
// Exit codes: 0 pass, 1 acceptance failure, 2 usage or config error,
// 3 sampling budget exceeded (partial results written).

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "polysim.h"

int main(int argc, char** argv) {
  CLI::App app{"polysim: polymer partition functions in Poisson environments "
               "and their stochastic heat equation limit"};
  app.set_version_flag("--version", std::string(polysim_version()));
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list available experiments");

  auto* run_cmd = app.add_subcommand("run", "run a named experiment");
  std::string experiment, config_path, out_dir, t_grid;
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 0;
  run_cmd->add_option("experiment", experiment, "experiment name")
      ->required();
  run_cmd->add_option("--config", config_path, "configuration file");
  run_cmd->add_option("--out", out_dir,
                      "output directory (default: $POLYSIM_OUT or results)");
  run_cmd->add_option("--t-grid", t_grid, "override the t grid, e.g. 10,100");
  run_cmd->add_option("--seed", seed, "master seed")
      ->each([&](const std::string&) { has_seed = true; });
  run_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_cmd->parsed()) {
    for (int i = 0; i < polysim_experiment_count(); ++i)
      std::printf("%s\n", polysim_experiment_name(i));
    return 0;
  }

  polysim_run_options options{};
  options.config_path = config_path.empty() ? nullptr : config_path.c_str();
  options.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
  options.t_grid = t_grid.empty() ? nullptr : t_grid.c_str();
  options.seed = seed;
  options.has_seed = has_seed ? 1 : 0;
  options.threads = threads;

  const int code = polysim_run_experiment(experiment.c_str(), &options);
  if (code == 2) std::fprintf(stderr, "error: %s\n", polysim_last_error());
  return code;
}

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

#ifndef POLYSIM_EXPERIMENTS_HPP
#define POLYSIM_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "polysim/config.hpp"

namespace polysim {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Mutable state of one experiment run: configuration access scoped to the
/// experiment's section, the CSV row sink and the verdict list.  Rows are
/// appended in a deterministic order regardless of the worker count.
class RunContext {
 public:
  RunContext(Config cfg, std::string experiment, std::uint64_t seed,
             int threads);

  const std::string& experiment() const { return experiment_; }
  std::uint64_t seed() const { return seed_; }
  int threads() const { return threads_; }

  double num(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::vector<double> list(const std::string& key,
                           const std::vector<double>& fallback) const;
  std::string str(const std::string& key, const std::string& fallback) const;

  void row(double t, const std::string& statistic, double value,
           double stderr_, std::int64_t n);
  void verdict(const std::string& name, bool pass, const std::string& detail);
  void note_budget_exceeded() { budget_exceeded_ = true; }

  bool budget_exceeded() const { return budget_exceeded_; }
  bool all_passed() const;
  std::string csv() const;
  std::string summary() const;
  const std::vector<Verdict>& verdicts() const { return verdicts_; }
  const Config& config() const { return cfg_; }

 private:
  Config cfg_;
  std::string experiment_;
  std::uint64_t seed_;
  int threads_;
  bool budget_exceeded_ = false;
  std::vector<std::string> rows_;
  std::vector<Verdict> verdicts_;
};

struct ExperimentDef {
  std::string name;
  std::vector<std::string> keys;
  void (*run)(RunContext&);
};

const std::vector<ExperimentDef>& experiment_registry();
std::vector<std::string> experiment_names();

struct RunOptions {
  std::string experiment;
  std::string config_path;  // empty: defaults only
  std::string out_dir;      // empty: $POLYSIM_OUT or "results"
  std::optional<std::uint64_t> seed;
  std::optional<std::string> t_grid;
  int threads = 0;
};

struct RunOutputs {
  std::string csv;
  std::string summary;
  std::string manifest_json;
  int exit_code = 0;
};

/// Runs one named experiment; exit codes: 0 pass, 1 acceptance failure,
/// 2 usage/config error, 3 budget exceeded (with partial results).
RunOutputs run_experiment_capture(const RunOptions& options);

/// Same, also writing results.csv, summary.txt and manifest.json to the
/// output directory (atomically, via rename).
int run_experiment(const RunOptions& options);

}  // namespace polysim

#endif  // POLYSIM_EXPERIMENTS_HPP

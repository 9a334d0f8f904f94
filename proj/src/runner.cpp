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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polysim/experiments.hpp"
#include "polysim/parallel.hpp"
#include "polysim/types.hpp"
#include "polysim/version.hpp"

namespace polysim {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::vector<std::string> kCommonKeys = {"seed", "out_dir", "threads"};

void validate_config(const Config& cfg) {
  const auto& registry = experiment_registry();
  for (const auto& [section, kv] : cfg.sections()) {
    const std::vector<std::string>* allowed = nullptr;
    if (section == "common") {
      allowed = &kCommonKeys;
    } else {
      for (const auto& def : registry)
        if (def.name == section) allowed = &def.keys;
      if (!allowed)
        throw ConfigError("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : kv) {
      (void)value;
      bool known = false;
      for (const auto& k : *allowed)
        if (k == key) known = true;
      if (!known)
        throw ConfigError("config: unknown key '" + key + "' in section [" +
                          section + "]");
    }
  }
}

void write_atomic(const std::filesystem::path& path,
                  const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

RunContext::RunContext(Config cfg, std::string experiment, std::uint64_t seed,
                       int threads)
    : cfg_(std::move(cfg)),
      experiment_(std::move(experiment)),
      seed_(seed),
      threads_(threads) {}

double RunContext::num(const std::string& key, double fallback) const {
  return cfg_.get_double(experiment_, key, fallback);
}

std::int64_t RunContext::integer(const std::string& key,
                                 std::int64_t fallback) const {
  return cfg_.get_int(experiment_, key, fallback);
}

std::vector<double> RunContext::list(
    const std::string& key, const std::vector<double>& fallback) const {
  return cfg_.get_double_list(experiment_, key, fallback);
}

std::string RunContext::str(const std::string& key,
                            const std::string& fallback) const {
  return cfg_.get_string(experiment_, key, fallback);
}

void RunContext::row(double t, const std::string& statistic, double value,
                     double stderr_, std::int64_t n) {
  std::ostringstream os;
  os << experiment_ << ',' << format_double(t) << ',' << statistic << ','
     << format_double(value) << ',' << format_double(stderr_) << ',' << n;
  rows_.push_back(os.str());
}

void RunContext::verdict(const std::string& name, bool pass,
                         const std::string& detail) {
  verdicts_.push_back({name, pass, detail});
}

bool RunContext::all_passed() const {
  for (const auto& v : verdicts_)
    if (!v.pass) return false;
  return true;
}

std::string RunContext::csv() const {
  std::string out = "experiment,t,statistic,value,stderr,n\n";
  for (const auto& r : rows_) {
    out += r;
    out += '\n';
  }
  return out;
}

std::string RunContext::summary() const {
  std::ostringstream os;
  os << "experiment: " << experiment_ << "\nseed: " << seed_ << "\n";
  for (const auto& v : verdicts_)
    os << (v.pass ? "[PASS] " : "[FAIL] ") << v.name << ": " << v.detail
       << "\n";
  os << (all_passed() ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  return os.str();
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& def : experiment_registry()) names.push_back(def.name);
  return names;
}

RunOutputs run_experiment_capture(const RunOptions& options) {
  RunOutputs out;
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentDef* def = nullptr;
  for (const auto& d : experiment_registry())
    if (d.name == options.experiment) def = &d;
  if (!def) {
    out.exit_code = 2;
    out.summary = "unknown experiment: " + options.experiment + "\n";
    return out;
  }

  Config cfg;
  try {
    if (!options.config_path.empty())
      cfg = Config::parse_file(options.config_path);
    if (options.seed) cfg.set("common", "seed", std::to_string(*options.seed));
    if (options.threads > 0)
      cfg.set("common", "threads", std::to_string(options.threads));
    if (options.t_grid) cfg.set(def->name, "t_grid", *options.t_grid);
    validate_config(cfg);
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.summary = std::string("config error: ") + e.what() + "\n";
    return out;
  }

  const std::uint64_t seed =
      std::uint64_t(cfg.get_int("common", "seed", 42));
  int threads = int(cfg.get_int("common", "threads", 0));
  if (threads <= 0) threads = hardware_threads();

  RunContext ctx(cfg, def->name, seed, threads);
  try {
    def->run(ctx);
  } catch (const BudgetExceededError& e) {
    ctx.note_budget_exceeded();
    ctx.verdict("budget", false,
                std::string("budget exceeded: ") + e.what() +
                    " (achieved stderr " + format_double(e.achieved_stderr()) +
                    ")");
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.summary = std::string("config error: ") + e.what() + "\n";
    return out;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  out.csv = ctx.csv();
  out.summary = ctx.summary();

  nlohmann::json manifest;
  manifest["schema_version"] = 1;
  manifest["library_version"] = kVersion;
  manifest["experiment"] = def->name;
  manifest["seed"] = seed;
  manifest["threads"] = threads;
  manifest["wall_clock_seconds"] = wall;
  manifest["csv_columns"] = "experiment,t,statistic,value,stderr,n";
  nlohmann::json jcfg = nlohmann::json::object();
  for (const auto& [section, kv] : cfg.sections()) {
    nlohmann::json jsec = nlohmann::json::object();
    for (const auto& [k, v] : kv) jsec[k] = v;
    jcfg[section] = jsec;
  }
  manifest["config"] = jcfg;
  nlohmann::json jv = nlohmann::json::array();
  for (const auto& v : ctx.verdicts())
    jv.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  manifest["verdicts"] = jv;
  out.manifest_json = manifest.dump(2) + "\n";

  if (ctx.budget_exceeded())
    out.exit_code = 3;
  else
    out.exit_code = ctx.all_passed() ? 0 : 1;
  return out;
}

int run_experiment(const RunOptions& options) {
  RunOptions opts = options;
  if (opts.out_dir.empty()) {
    const char* env = std::getenv("POLYSIM_OUT");
    opts.out_dir = env && *env ? env : "results";
  }
  const RunOutputs out = run_experiment_capture(opts);
  if (out.exit_code == 2) {
    std::fputs(out.summary.c_str(), stderr);
    return out.exit_code;
  }
  std::filesystem::path dir(opts.out_dir);
  std::filesystem::create_directories(dir);
  write_atomic(dir / "results.csv", out.csv);
  write_atomic(dir / "summary.txt", out.summary);
  write_atomic(dir / "manifest.json", out.manifest_json);
  std::fputs(out.summary.c_str(), stdout);
  return out.exit_code;
}

}  // namespace polysim

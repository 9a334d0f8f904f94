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

// Acceptance suite: one pass/fail line per criterion.  Criteria that map
// onto a shipped experiment run it with pinned settings; the chaos gap
// ordering and the moment-bound grid have dedicated drivers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polysim/chaos.hpp"
#include "polysim/experiments.hpp"
#include "polysim/heat_kernel.hpp"
#include "polysim/parallel.hpp"
#include "polysim/polymer.hpp"
#include "polysim/polymer_mc.hpp"
#include "polysim/stats.hpp"
#include "support/exact_polymer.hpp"

using namespace polysim;

namespace {

int g_failures = 0;
std::uint64_t kSeed = 42;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL",
              criterion, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("polysim_acceptance_" + name + ".cfg");
  std::ofstream(path) << text;
  return path.string();
}

struct ExperimentRun {
  int exit_code = 0;
  double seconds = 0.0;
  std::string summary;
};

ExperimentRun run_pinned(const std::string& experiment,
                         const std::string& config_text) {
  RunOptions opts;
  opts.experiment = experiment;
  opts.config_path = write_config(experiment, config_text);
  opts.seed = kSeed;
  const auto t0 = std::chrono::steady_clock::now();
  const RunOutputs out = run_experiment_capture(opts);
  ExperimentRun run;
  run.exit_code = out.exit_code;
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  run.summary = out.summary;
  return run;
}

std::string failures_of(const std::string& summary) {
  std::istringstream in(summary);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("[FAIL]", 0) == 0) out += "\n    " + line;
  return out;
}

void experiment_criterion(int criterion, const std::string& name,
                          const std::string& experiment,
                          const std::string& config, double runtime_limit) {
  const ExperimentRun run = run_pinned(experiment, config);
  std::ostringstream detail;
  detail.precision(4);
  detail << experiment << " exit " << run.exit_code << ", " << run.seconds
         << " s";
  bool pass = run.exit_code == 0;
  if (runtime_limit > 0.0 && run.seconds > runtime_limit) {
    pass = false;
    detail << " (over the " << runtime_limit << " s target)";
  }
  detail << failures_of(run.summary);
  report(criterion, name, pass, detail.str());
}

// Criterion 5, second clause: the chaos-vs-direct gap must shrink with the
// order.  Against the Monte Carlo reference the inner noise floors the gap,
// so the ordering is measured against the deterministic subset-expansion
// oracle on the same five environments.
void chaos_gap_ordering() {
  PolymerParams p{0.3, 0.5, 0.5, 1.0};
  bool pass = true;
  std::ostringstream detail;
  detail.precision(3);
  for (std::uint64_t s = 2; s <= 6; ++s) {
    RandomStream stream(kSeed, (std::uint64_t(7) << 48) + s);
    const Environment env = sample_standard_environment(p, stream);
    const double exact = test_support::exact_renormalized_W(env, p);
    double prev = 1e300;
    detail << " seed" << s << ":";
    for (int K = 1; K <= 3; ++K) {
      const double gap =
          std::fabs(chaos_reconstruct_W(env, p, K).value - exact);
      detail << " " << gap;
      if (gap >= prev) pass = false;
      prev = gap;
    }
  }
  report(5, "chaos gap shrinks through K = 1, 2, 3", pass, detail.str());
}

// Criterion 11: sup over a 4 x 4 (T, X) grid of E[Y_t(T,X)^2] / rho(T,X)^2,
// across t in {1e2, 1e3, 1e4}; the sup sequence must show no trend.  The
// second moments discount the stored inner standard errors.
void moment_bound() {
  ScalingSchedule schedule{1.0, FixedNuR{0.05, 1.0}};
  const std::vector<double> t_grid{1e2, 1e3, 1e4};
  const std::vector<double> T_grid{0.25, 0.5, 0.75, 1.0};
  const std::vector<double> X_grid{0.0, 0.5, 1.0, 1.5};
  const std::int64_t n_envs = 200;
  SmcOptions opts;
  opts.n_walkers = 128;
  opts.min_replicates = 2;
  opts.max_replicates = 2;
  opts.rel_stderr_target = 1e9;  // fixed budget; noise is discounted below

  std::vector<double> sups;
  std::ostringstream detail;
  detail.precision(4);
  for (double t : t_grid) {
    const PolymerParams params = schedule.eval(t);
    const std::size_t n_cells = T_grid.size() * X_grid.size();
    std::vector<double> block(std::size_t(n_envs) * n_cells);
    parallel_for(std::size_t(n_envs), 0, [&](std::size_t i) {
      RandomStream stream(kSeed, (std::uint64_t(11) << 48) + i);
      const Environment env = sample_standard_environment(params, stream);
      std::size_t cell = 0;
      for (double T : T_grid) {
        for (double X : X_grid) {
          RandomStream inner = stream.child(1000 + cell);
          const EstimatorResult y =
              rescaled_field_Y(env, schedule, t, T, X, inner, opts);
          block[i * n_cells + cell] =
              y.value * y.value - y.stderr_ * y.stderr_;
          ++cell;
        }
      }
    });
    double sup = 0.0;
    std::size_t cell = 0;
    for (double T : T_grid) {
      for (double X : X_grid) {
        double m2 = 0.0;
        for (std::int64_t i = 0; i < n_envs; ++i)
          m2 += block[std::size_t(i) * n_cells + cell];
        m2 /= double(n_envs);
        const double rho = heat_kernel(T, X);
        sup = std::max(sup, m2 / (rho * rho));
        ++cell;
      }
    }
    sups.push_back(sup);
    detail << " sup(t=" << t << ")=" << sup;
  }
  const TrendResult trend = trend_test(sups);
  detail << " tau=" << trend.tau;
  const bool pass = trend.tau > -0.5 && trend.tau < 0.5 && sups[0] < 100.0 &&
                    sups[1] < 100.0 && sups[2] < 100.0;
  report(11, "second-moment ratio bounded with no trend across t", pass,
         detail.str());
}

void determinism() {
  struct Case {
    const char* experiment;
    const char* config;
  };
  const std::vector<Case> cases = {
      {"env-check", "[env-check]\nn_envs = 3000\n"},
      {"wt-mean",
       "[wt-mean]\nbetas = 0.5\nnus = 1.0\nn_envs = 2000\nn_paths = 500\n"},
      {"fock-norms", "[fock-norms]\nmc_samples = 50000\n"},
      {"she-moments", "[she-moments]\ndx = 0.05\nn_draws = 30\n"},
  };
  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    std::string reference;
    bool case_ok = true;
    for (int threads : {1, 4, 8}) {
      RunOptions opts;
      opts.experiment = c.experiment;
      opts.config_path =
          write_config(std::string(c.experiment) + "_det", c.config);
      opts.seed = kSeed;
      opts.threads = threads;
      const RunOutputs out = run_experiment_capture(opts);
      if (out.exit_code != 0) case_ok = false;
      if (reference.empty())
        reference = out.csv;
      else if (reference != out.csv)
        case_ok = false;
    }
    if (!case_ok) pass = false;
    detail << " " << c.experiment << (case_ok ? ":ok" : ":DIFFERS");
  }
  report(12, "bit-identical results.csv across thread counts {1,4,8}", pass,
         detail.str());
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  experiment_criterion(1, "mean-one martingale over the (beta, nu) grid",
                       "wt-mean",
                       "[wt-mean]\nbetas = 0.25,0.5,1.0\nnus = 0.5,1.0,2.0\n"
                       "r = 0.5\nt = 1\nn_envs = 10000\nn_paths = 2000\n",
                       120.0);
  experiment_criterion(2, "partition mean exp(lambda nu r t) over the grid",
                       "zt-mean",
                       "[zt-mean]\nbetas = 0.25,0.5,1.0\nnus = 0.5,1.0,2.0\n"
                       "r = 0.5\nt = 1\nn_envs = 10000\nn_paths = 2000\n",
                       0.0);
  experiment_criterion(3, "tube-energy law: Poisson(nu r t) moments and fit",
                       "env-check", "[env-check]\nn_envs = 10000\n", 0.0);
  experiment_criterion(4, "Wiener-Ito covariance structure on indicators",
                       "covariance", "[covariance]\nn_envs = 10000\n", 0.0);
  experiment_criterion(
      5, "chaos reconstruction within the declared budget", "chaos-vs-direct",
      "[chaos-vs-direct]\nseeds = 5\nfirst_seed = 2\nn_paths = 4000000\n",
      0.0);
  chaos_gap_ordering();
  experiment_criterion(6, "Fock norms: per-term values and certified tail",
                       "fock-norms", "[fock-norms]\norder = 30\n", 0.0);
  experiment_criterion(7, "SHE moments at dx = 0.02 with 200 draws",
                       "she-moments",
                       "[she-moments]\ndx = 0.02\nn_draws = 200\n"
                       "betas = 0.5,1.0\n",
                       600.0);
  experiment_criterion(8, "intermediate-disorder convergence of W_t",
                       "convergence",
                       "[convergence]\nbeta_star = 1.0\nnu0 = 0.1\nr0 = 1.0\n"
                       "t_grid = 10,100,1000\nn_envs = 2000\nn_ref = 10000\n",
                       0.0);
  experiment_criterion(9, "point-to-point convergence at (T,X) = (1, 0.5)",
                       "p2p-convergence",
                       "[p2p-convergence]\nbeta_star = 1.0\nnu0 = 0.1\n"
                       "r0 = 1.0\nt_grid = 10,100,1000\nn_envs = 1200\n",
                       0.0);
  experiment_criterion(10, "weak SHE identity residual on three seeds",
                       "poisson-she-residual",
                       "[poisson-she-residual]\nseeds = 3\n", 0.0);
  moment_bound();
  determinism();

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%s — %d criterion(s) failed, %.1f s total\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures, total);
  return g_failures == 0 ? 0 : 1;
}

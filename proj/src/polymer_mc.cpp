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

#include "polysim/polymer_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polysim/heat_kernel.hpp"
#include "polysim/parallel.hpp"

namespace polysim {

namespace {

// Points grouped into time blocks so that walkers can leap over stretches
// whose points are provably out of reach (7 standard deviations of the
// in-block excursion, on top of the tube radius).
struct Block {
  int begin = 0, end = 0;     // point index range [begin, end)
  double t_end = 0.0;         // time of the last point in the block
  std::vector<double> sorted_xs;
};

struct SmcProblem {
  std::vector<double> times;
  std::vector<double> xs;
  std::vector<Block> blocks;
  double horizon = 0.0;
  double lambda = 0.0;
  double half_r = 0.0;
  bool bridge = false;
  double end_x = 0.0;

  void build_blocks(int block_size) {
    blocks.clear();
    const int n = int(times.size());
    for (int b = 0; b < n; b += block_size) {
      Block blk;
      blk.begin = b;
      blk.end = std::min(n, b + block_size);
      blk.t_end = times[static_cast<std::size_t>(blk.end - 1)];
      blk.sorted_xs.assign(xs.begin() + blk.begin, xs.begin() + blk.end);
      std::sort(blk.sorted_xs.begin(), blk.sorted_xs.end());
      blocks.push_back(std::move(blk));
    }
  }

  // True when no block point lies within half_r of [lo, hi].
  bool block_clear(const Block& blk, double lo, double hi) const {
    auto it = std::lower_bound(blk.sorted_xs.begin(), blk.sorted_xs.end(),
                               lo - half_r);
    return it == blk.sorted_xs.end() || *it > hi + half_r;
  }
};

SmcProblem build_problem(const Environment& env, const PolymerParams& p,
                         double horizon, bool bridge, double end_x,
                         const SmcOptions& opts) {
  SmcProblem prob;
  prob.horizon = horizon;
  prob.lambda = p.lambda();
  prob.half_r = 0.5 * p.r;
  prob.bridge = bridge;
  prob.end_x = end_x;
  for (const auto& pt : env.points) {
    if (!(pt.s > 0.0 && pt.s <= horizon)) continue;
    if (opts.prune) {
      double drift, sd;
      if (bridge) {
        drift = pt.s / horizon * end_x;
        sd = std::sqrt(pt.s * (horizon - pt.s) / horizon);
      } else {
        drift = 0.0;
        sd = std::sqrt(pt.s);
      }
      if (std::fabs(pt.x - drift) >
          opts.cone_c * sd + prob.half_r + opts.cone_margin)
        continue;
    }
    prob.times.push_back(pt.s);
    prob.xs.push_back(pt.x);
  }
  prob.build_blocks(6);
  return prob;
}

// One SMC replicate: log of an unbiased estimate of P[exp(beta * energy)]
// under the problem's transition law (free or bridge).
double smc_replicate(const SmcProblem& prob, RandomStream& stream,
                     const SmcOptions& opts) {
  const int n = opts.n_walkers;
  const double lam = prob.lambda;
  const double half_r = prob.half_r;
  std::vector<double> pos(static_cast<std::size_t>(n), 0.0), logw(static_cast<std::size_t>(n), 0.0);
  std::vector<double> scratch(static_cast<std::size_t>(n));
  std::vector<double> cum(static_cast<std::size_t>(n));
  double log_z = 0.0;
  double s_prev = 0.0;

  for (std::size_t bi = 0; bi < prob.blocks.size(); ++bi) {
    const Block& blk = prob.blocks[bi];
    const double block_dt = blk.t_end - s_prev;
    const double excursion = 7.0 * std::sqrt(block_dt);
    for (int w = 0; w < n; ++w) {
      double b = pos[static_cast<std::size_t>(w)];
      // End-of-block conditional mean bounds the drift of the path.
      double mean_end, sd_end;
      if (prob.bridge) {
        const double rem = prob.horizon - s_prev;
        mean_end = b + block_dt / rem * (prob.end_x - b);
        sd_end = std::sqrt(block_dt * (prob.horizon - blk.t_end) / rem);
      } else {
        mean_end = b;
        sd_end = std::sqrt(block_dt);
      }
      const double lo = std::min(b, mean_end) - excursion;
      const double hi = std::max(b, mean_end) + excursion;
      if (prob.block_clear(blk, lo, hi)) {
        pos[static_cast<std::size_t>(w)] = mean_end + sd_end * stream.normal();
        continue;
      }
      // Near block: step through every point time.
      double sp = s_prev;
      double lw = 0.0;
      for (int k = blk.begin; k < blk.end; ++k) {
        const double s = prob.times[static_cast<std::size_t>(k)];
        const double ds = s - sp;
        double mean, sd;
        if (prob.bridge) {
          const double rem = prob.horizon - sp;
          mean = b + ds / rem * (prob.end_x - b);
          sd = std::sqrt(ds * (prob.horizon - s) / rem);
        } else {
          mean = b;
          sd = std::sqrt(ds);
        }
        const double dx = prob.xs[static_cast<std::size_t>(k)] - mean;
        if (std::fabs(dx) > half_r + 9.0 * sd || sd == 0.0) {
          // box unreachable in one step: plain transition, unit weight
          b = mean + sd * stream.normal();
        } else {
          const double fa = normal_cdf((dx - half_r) / sd);
          const double fb = normal_cdf((dx + half_r) / sd);
          const double p = fb - fa;
          double f;
          if (p > 0.0) {
            const double u = stream.uniform();
            const double v = stream.uniform();
            if (u * (1.0 + lam * p) < (1.0 + lam) * p) {
              f = fa + v * p;
            } else {
              const double q = v * (1.0 - p);
              f = q < fa ? q : q + p;
            }
            lw += std::log1p(lam * p);
            if (f <= 0.0) f = 1e-300;
            if (f >= 1.0) f = 1.0 - 1e-16;
            b = mean + sd * normal_quantile(f);
          } else {
            b = mean + sd * stream.normal();
          }
        }
        sp = s;
      }
      pos[static_cast<std::size_t>(w)] = b;
      logw[static_cast<std::size_t>(w)] += lw;
    }
    s_prev = blk.t_end;

    // Effective sample size, resample when it drops below the threshold.
    double m = logw[0];
    for (double v : logw) m = std::max(m, v);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double wv = std::exp(logw[static_cast<std::size_t>(i)] - m);
      scratch[static_cast<std::size_t>(i)] = wv;
      sum += wv;
      sum2 += wv * wv;
    }
    if (bi + 1 < prob.blocks.size() &&
        sum * sum < opts.ess_fraction * n * sum2) {
      log_z += m + std::log(sum / n);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += scratch[static_cast<std::size_t>(i)] / sum;
        cum[static_cast<std::size_t>(i)] = acc;
      }
      const double u0 = stream.uniform() / n;
      int j = 0;
      for (int i = 0; i < n; ++i) {
        const double target = u0 + double(i) / n;
        while (j < n - 1 && cum[static_cast<std::size_t>(j)] < target) ++j;
        scratch[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(j)];
      }
      std::swap(pos, scratch);
      std::fill(logw.begin(), logw.end(), 0.0);
    }
  }

  double m = logw[0];
  for (double v : logw) m = std::max(m, v);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::exp(logw[static_cast<std::size_t>(i)] - m);
  log_z += m + std::log(sum / n);
  return log_z;
}

EstimatorResult smc_estimate(const SmcProblem& prob, double log_scale,
                             RandomStream& stream, const SmcOptions& opts) {
  if (prob.times.empty() || prob.lambda == 0.0) {
    // Every path has weight one; the estimate is exact.
    return {std::exp(log_scale), 0.0, opts.n_walkers};
  }
  std::vector<double> reps;
  reps.reserve(static_cast<std::size_t>(opts.min_replicates));
  std::uint64_t salt = 0;
  auto run_batch = [&](int count) {
    for (int i = 0; i < count; ++i) {
      RandomStream rs = stream.child(salt++);
      reps.push_back(std::exp(smc_replicate(prob, rs, opts) + log_scale));
    }
  };
  run_batch(std::max(2, opts.min_replicates));
  EstimatorResult res;
  for (;;) {
    const double mean =
        std::accumulate(reps.begin(), reps.end(), 0.0) / double(reps.size());
    double ss = 0.0;
    for (double v : reps) ss += (v - mean) * (v - mean);
    res.value = mean;
    res.stderr_ = std::sqrt(ss / (double(reps.size()) * (reps.size() - 1.0)));
    res.n = std::int64_t(reps.size()) * opts.n_walkers;
    if (res.stderr_ <= opts.rel_stderr_target * std::fabs(mean)) return res;
    if (int(reps.size()) >= opts.max_replicates)
      throw BudgetExceededError(
          "smc_estimate: replicate budget exhausted before stderr target",
          res.stderr_);
    run_batch(int(reps.size()));  // double the replicate count
  }
}

}  // namespace

EstimatorResult smc_renormalized_W(const Environment& env,
                                   const PolymerParams& params,
                                   RandomStream& stream,
                                   const SmcOptions& opts) {
  params.validate();
  if (env.box.t_max < params.t)
    throw std::domain_error("smc_renormalized_W: environment too short");
  const SmcProblem prob =
      build_problem(env, params, params.t, false, 0.0, opts);
  const double log_scale = -params.lambda() * params.nu * params.r * params.t;
  return smc_estimate(prob, log_scale, stream, opts);
}

EstimatorResult smc_bridge_weight(const Environment& env,
                                  const PolymerParams& params,
                                  const SpaceTimePoint& endpoint,
                                  RandomStream& stream,
                                  const SmcOptions& opts) {
  params.validate();
  if (!(endpoint.s > 0.0) || env.box.t_max < endpoint.s)
    throw std::domain_error("smc_bridge_weight: bad endpoint horizon");
  const SmcProblem prob =
      build_problem(env, params, endpoint.s, true, endpoint.x, opts);
  const double log_scale =
      -params.lambda() * params.nu * params.r * endpoint.s;
  return smc_estimate(prob, log_scale, stream, opts);
}

WDistributionResult sample_W_distribution(const ScalingSchedule& schedule,
                                          double t, std::int64_t n_envs,
                                          const SmcOptions& opts,
                                          std::uint64_t seed, int threads) {
  if (n_envs < 100)
    throw std::domain_error("sample_W_distribution: n_envs must be >= 100");
  const PolymerParams params = schedule.eval(t);
  WDistributionResult out;
  out.values.resize(static_cast<std::size_t>(n_envs));
  out.inner_stderr.resize(static_cast<std::size_t>(n_envs));
  parallel_for(static_cast<std::size_t>(n_envs), threads, [&](std::size_t i) {
    RandomStream env_stream(seed, (std::uint64_t(1) << 48) + i);
    const Environment env = sample_standard_environment(params, env_stream);
    RandomStream inner = env_stream.child(0x57);
    const EstimatorResult w = smc_renormalized_W(env, params, inner, opts);
    out.values[i] = w.value;
    out.inner_stderr[i] = w.stderr_;
  });
  return out;
}

EstimatorResult rescaled_field_Y(const Environment& env,
                                 const ScalingSchedule& schedule, double t,
                                 double T, double X, RandomStream& stream,
                                 const SmcOptions& opts) {
  if (T == 0.0 && X != 0.0)
    throw std::domain_error("rescaled_field_Y: T = 0 requires X = 0");
  if (!(T > 0.0 && T <= 1.0))
    throw std::domain_error("rescaled_field_Y: T must be in (0, 1]");
  PolymerParams params = schedule.eval(t);
  params.t = t * T;
  if (env.box.t_max < params.t)
    throw std::domain_error("rescaled_field_Y: environment does not cover tT");
  const SpaceTimePoint endpoint{t * T, std::sqrt(t) * X};
  EstimatorResult res = smc_bridge_weight(env, params, endpoint, stream, opts);
  const double scale = heat_kernel(T, X);
  res.value *= scale;
  res.stderr_ *= scale;
  return res;
}

}  // namespace polysim

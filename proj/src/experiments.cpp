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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polysim/chaos.hpp"
#include "polysim/experiments.hpp"
#include "polysim/heat_kernel.hpp"
#include "polysim/parallel.hpp"
#include "polysim/poisson_she.hpp"
#include "polysim/polymer.hpp"
#include "polysim/polymer_mc.hpp"
#include "polysim/quadrature.hpp"
#include "polysim/schedule.hpp"
#include "polysim/she.hpp"
#include "polysim/stats.hpp"

namespace polysim {

namespace {

constexpr std::uint64_t kDomEnv = std::uint64_t(3) << 48;
constexpr std::uint64_t kDomShe = std::uint64_t(4) << 48;
constexpr std::uint64_t kDomResidual = std::uint64_t(5) << 48;
constexpr std::uint64_t kDomChaos = std::uint64_t(7) << 48;
constexpr std::uint64_t kDomField = std::uint64_t(8) << 48;

std::string fmt(double v, int prec = 5) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

bool z_verdict(RunContext& ctx, const std::string& name, double value,
               double target, double stderr_, double extra_tol = 0.0) {
  const double dev = std::fabs(value - target);
  const bool pass = dev <= 3.0 * stderr_ + extra_tol;
  ctx.verdict(name, pass,
              "value " + fmt(value) + " target " + fmt(target) + " dev " +
                  fmt(dev) + " allowed " + fmt(3.0 * stderr_ + extra_tol));
  return pass;
}

// ---------------------------------------------------------------------------
// env-check: Poisson counts, the Mecke identity on a sub-box, and the
// tube-energy law of a frozen path.

void run_env_check(RunContext& ctx) {
  const double nu = ctx.num("nu", 2.0);
  const double r = ctx.num("r", 1.0);
  const double t = ctx.num("t", 3.0);
  const std::int64_t n_envs = ctx.integer("n_envs", 10000);

  const SpaceTimeBox box{0.0, t, 0.0, 1.0};
  const SpaceTimeBox sub{0.0, 1.0, 0.0, 0.5};
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_envs)),
      sub_counts(static_cast<std::size_t>(n_envs));
  parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
    RandomStream stream(ctx.seed(), kDomEnv + i);
    const auto pts = sample_poisson_points(box, nu, stream);
    counts[i] = std::int64_t(pts.size());
    std::int64_t inside = 0;
    for (const auto& p : pts)
      if (sub.contains(p)) ++inside;
    sub_counts[i] = inside;
  });

  const auto count_stats = [&](const std::vector<std::int64_t>& c) {
    std::vector<double> v(c.begin(), c.end());
    return mean_stderr(v);
  };
  const EstimatorResult cm = count_stats(counts);
  ctx.row(t, "count_mean", cm.value, cm.stderr_, n_envs);
  z_verdict(ctx, "poisson count mean = nu*area", cm.value, nu * box.area(),
            cm.stderr_);

  // variance of the counts, with a plug-in standard error
  double var = 0.0, se_var = 0.0;
  {
    std::vector<double> sq(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double d = double(counts[i]) - cm.value;
      sq[i] = d * d;
    }
    const EstimatorResult vs = mean_stderr(sq);
    var = vs.value * double(n_envs) / double(n_envs - 1);
    se_var = vs.stderr_;
  }
  ctx.row(t, "count_var", var, se_var, n_envs);
  z_verdict(ctx, "poisson count variance = nu*area", var, nu * box.area(),
            se_var);

  const EstimatorResult mecke = count_stats(sub_counts);
  ctx.row(t, "mecke_subbox_mean", mecke.value, mecke.stderr_, n_envs);
  z_verdict(ctx, "Mecke identity on sub-box", mecke.value, nu * sub.area(),
            mecke.stderr_);

  // frozen path at the origin: energies are Poisson(nu r t) across
  // environments
  PolymerParams params{0.5, nu, r, t};
  std::vector<std::int64_t> energies(static_cast<std::size_t>(n_envs));
  parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
    RandomStream stream(ctx.seed(), kDomEnv + (std::uint64_t(1) << 40) + i);
    const Environment env = sample_standard_environment(params, stream);
    PathSample zero;
    zero.times = env.point_times();
    zero.values.assign(zero.times.size(), 0.0);
    energies[i] = tube_energy(zero, env, r);
  });
  const EstimatorResult em = count_stats(energies);
  ctx.row(t, "energy_mean", em.value, em.stderr_, n_envs);
  z_verdict(ctx, "tube energy mean = nu r t", em.value, nu * r * t,
            em.stderr_);
  double evar = 0.0, se_evar = 0.0;
  {
    std::vector<double> sq(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
      const double d = double(energies[i]) - em.value;
      sq[i] = d * d;
    }
    const EstimatorResult vs = mean_stderr(sq);
    evar = vs.value * double(n_envs) / double(n_envs - 1);
    se_evar = vs.stderr_;
  }
  ctx.row(t, "energy_var", evar, se_evar, n_envs);
  z_verdict(ctx, "tube energy variance = nu r t", evar, nu * r * t, se_evar);

  const double pval = chi_square_poisson_pvalue(energies, nu * r * t);
  ctx.row(t, "energy_chi2_pvalue", pval, 0.0, n_envs);
  ctx.verdict("tube energy chi-square fit (level 0.01)", pval >= 0.01,
              "p-value " + fmt(pval));
}

// ---------------------------------------------------------------------------
// wt-mean / zt-mean over a (beta, nu) grid.

std::vector<double> w_samples_plain(const PolymerParams& params,
                                    std::int64_t n_envs, std::int64_t n_paths,
                                    std::uint64_t seed, int threads,
                                    bool renormalized) {
  std::vector<double> values(static_cast<std::size_t>(n_envs));
  parallel_for(static_cast<std::size_t>(n_envs), threads, [&](std::size_t i) {
    RandomStream stream(seed, kDomEnv + i);
    const Environment env = sample_standard_environment(params, stream);
    RandomStream inner = stream.child(1);
    const EstimatorResult est =
        renormalized ? renormalized_W(env, params, n_paths, inner)
                     : partition_Z(env, params, n_paths, inner);
    values[i] = est.value;
  });
  return values;
}

void run_mean_grid(RunContext& ctx, bool renormalized) {
  const std::vector<double> betas = ctx.list("betas", {0.25, 0.5, 1.0});
  const std::vector<double> nus = ctx.list("nus", {0.5, 1.0, 2.0});
  const double r = ctx.num("r", 0.5);
  const double t = ctx.num("t", 1.0);
  const std::int64_t n_envs = ctx.integer("n_envs", 10000);
  const std::int64_t n_paths = ctx.integer("n_paths", 2000);

  for (double beta : betas) {
    for (double nu : nus) {
      PolymerParams params{beta, nu, r, t};
      const auto values = w_samples_plain(params, n_envs, n_paths, ctx.seed(),
                                          ctx.threads(), renormalized);
      const EstimatorResult m = mean_stderr(values);
      const double target =
          renormalized ? 1.0
                       : std::exp(lambda_of_beta(beta) * nu * r * t);
      const std::string cell =
          "beta=" + fmt(beta, 3) + ",nu=" + fmt(nu, 3);
      ctx.row(t, (renormalized ? "w_mean[" : "z_mean[") + cell + "]", m.value,
              m.stderr_, n_envs);
      z_verdict(ctx,
                (renormalized ? "mean-one W at " : "partition mean at ") +
                    cell,
                m.value, target, m.stderr_);
    }
  }
}

void run_wt_mean(RunContext& ctx) { run_mean_grid(ctx, true); }
void run_zt_mean(RunContext& ctx) { run_mean_grid(ctx, false); }

// ---------------------------------------------------------------------------
// chaos-vs-direct: chaos reconstruction against the direct estimate on the
// same environments.

void run_chaos_vs_direct(RunContext& ctx) {
  PolymerParams params{ctx.num("beta", 0.3), ctx.num("nu", 0.5),
                       ctx.num("r", 0.5), ctx.num("t", 1.0)};
  const std::int64_t n_seeds = ctx.integer("seeds", 5);
  const std::int64_t first_seed = ctx.integer("first_seed", 2);
  const std::int64_t n_paths = ctx.integer("n_paths", 4000000);
  const int max_k = int(ctx.integer("max_order", 3));
  const double quad_tol = 1e-4;

  for (std::int64_t s = first_seed; s < first_seed + n_seeds; ++s) {
    RandomStream stream(ctx.seed(), kDomChaos + std::uint64_t(s));
    const Environment env = sample_standard_environment(params, stream);
    RandomStream inner = stream.child(1);
    const EstimatorResult direct =
        renormalized_W(env, params, n_paths, inner);
    ctx.row(params.t, "direct_W[seed=" + std::to_string(s) + "]",
            direct.value, direct.stderr_, direct.n);
    double prev_gap = INFINITY;
    (void)prev_gap;
    for (int K = 1; K <= max_k; ++K) {
      const ChaosResult chaos = chaos_reconstruct_W(env, params, K);
      const double gap = std::fabs(chaos.value - direct.value);
      const double budget =
          3.0 * chaos.tail_l2 + quad_tol + 3.0 * direct.stderr_;
      ctx.row(params.t,
              "chaos_W[seed=" + std::to_string(s) + ",K=" + std::to_string(K) +
                  "]",
              chaos.value, chaos.tail_l2, std::int64_t(env.points.size()));
      ctx.row(params.t,
              "chaos_gap[seed=" + std::to_string(s) +
                  ",K=" + std::to_string(K) + "]",
              gap, budget, std::int64_t(env.points.size()));
      ctx.verdict("chaos vs direct, seed " + std::to_string(s) + ", K=" +
                      std::to_string(K),
                  gap <= budget,
                  "gap " + fmt(gap, 3) + " budget " + fmt(budget, 3));
    }
  }
}

// ---------------------------------------------------------------------------
// covariance: Wiener-Ito covariance structure on indicator kernels.

void run_covariance(RunContext& ctx) {
  const double nu = ctx.num("nu", 2.0);
  const std::int64_t n_envs = ctx.integer("n_envs", 10000);
  const SpaceTimeBox env_box{0.0, 1.0, -1.0, 1.0};
  const SpaceTimeBox A{0.0, 0.5, -1.0, 0.0};
  const SpaceTimeBox B{0.3, 1.0, -0.5, 0.5};
  const SpaceTimeBox C{0.0, 0.6, -1.0, 0.5};
  const SpaceTimeBox D{0.4, 1.0, -0.2, 1.0};
  const SpaceTimeBox E{0.5, 1.0, 0.0, 1.0};

  struct Case {
    std::string name;
    BoxProductKernel g, h;
  };
  const std::vector<Case> cases = {
      {"k=1,l=1", {{A}}, {{B}}},
      {"k=2,l=2", {{A, E}}, {{C, D}}},
      {"k=1,l=2", {{B}}, {{A, E}}},
  };
  for (const auto& c : cases) {
    const CovarianceCheck chk =
        covariance_check(nu, c.g, c.h, n_envs, env_box, ctx.seed(),
                         ctx.threads());
    ctx.row(1.0, "cov_empirical[" + c.name + "]", chk.empirical, chk.stderr_,
            n_envs);
    ctx.row(1.0, "cov_theoretical[" + c.name + "]", chk.theoretical, 0.0,
            n_envs);
    z_verdict(ctx, "covariance structure " + c.name, chk.empirical,
              chk.theoretical, chk.stderr_);
  }
}

// ---------------------------------------------------------------------------
// fock-norms: per-term norms of rho^k against Monte Carlo, and the norm
// series with its certified tail.

void run_fock_norms(RunContext& ctx) {
  const double beta = ctx.num("beta", 1.0);
  const int order = int(ctx.integer("order", 30));
  const std::int64_t mc_samples = ctx.integer("mc_samples", 200000);

  for (int k = 1; k <= 3; ++k) {
    const double exact = rho_k_norm_sq(k);
    const SimplexKernel rho = rho_k_kernel(k);
    RandomStream stream(ctx.seed(), kDomChaos + 100 + std::uint64_t(k));
    const EstimatorResult mc =
        simplex_function_l2_mc(k, 1.0, rho.eval, mc_samples, stream);
    ctx.row(double(k), "rho_norm_sq_exact", exact, 0.0, 1);
    ctx.row(double(k), "rho_norm_sq_mc", mc.value, mc.stderr_, mc.n);
    z_verdict(ctx, "||rho^" + std::to_string(k) + "||^2 vs MC", mc.value,
              exact, mc.stderr_);
  }
  const FockNorm norm = fock_norm_rho(beta, order);
  ctx.row(double(order), "fock_norm_partial", norm.partial_sum, 0.0, 1);
  ctx.row(double(order), "fock_norm_tail_bound", norm.tail_bound, 0.0, 1);
  ctx.verdict("series tail certified below 1e-12 at K=" +
                  std::to_string(order),
              norm.tail_bound < 1e-12, "tail " + fmt(norm.tail_bound, 3));
}

// ---------------------------------------------------------------------------
// she-moments: moments of the discretized stochastic heat equation.

struct SheDrawStats {
  std::vector<double> p2l, z_origin, mass;
};

SheDrawStats she_draws(double beta, const SheGridSpec& spec, std::int64_t n,
                       std::uint64_t seed, int threads) {
  SheDrawStats out;
  out.p2l.resize(static_cast<std::size_t>(n));
  out.z_origin.resize(static_cast<std::size_t>(n));
  out.mass.resize(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    StreamedNoise noise(spec.dt, spec.dx, spec.nx(), seed ^ kDomShe,
                        std::uint64_t(i));
    const SheSolution sol = solve_she_fd(beta, spec, noise);
    out.p2l[i] = p2l_Z(sol);
    out.z_origin[i] = sol.final_slice[static_cast<std::size_t>(spec.j_of(0.0))];
    out.mass[i] = out.p2l[i];
  });
  return out;
}

std::vector<double> she_p2l_samples(double beta, double dx, double x_max,
                                    std::int64_t n, std::uint64_t seed,
                                    int threads) {
  SheGridSpec spec{dx * dx / 4.0, dx, 1.0, x_max};
  return she_draws(beta, spec, n, seed, threads).p2l;
}

std::vector<double> she_point_samples(double beta, double dx, double x_max,
                                      double x, std::int64_t n,
                                      std::uint64_t seed, int threads) {
  SheGridSpec spec{dx * dx / 4.0, dx, 1.0, x_max};
  std::vector<double> out(static_cast<std::size_t>(n));
  const std::int64_t j = spec.j_of(x);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    StreamedNoise noise(spec.dt, spec.dx, spec.nx(), seed ^ kDomShe,
                        std::uint64_t(i));
    const SheSolution sol = solve_she_fd(beta, spec, noise);
    out[i] = sol.final_slice[static_cast<std::size_t>(j)];
  });
  return out;
}

void run_she_moments(RunContext& ctx) {
  const double dx = ctx.num("dx", 0.02);
  const double x_max = ctx.num("x_max", 6.0);
  const std::int64_t n_draws = ctx.integer("n_draws", 200);
  const std::vector<double> betas = ctx.list("betas", {0.5, 1.0});
  SheGridSpec spec{dx * dx / 4.0, dx, 1.0, x_max};
  const double rho10 = heat_kernel(1.0, 0.0);

  {  // beta = 0: deterministic discrete heat kernel
    StreamedNoise noise(spec.dt, spec.dx, spec.nx(), ctx.seed() ^ kDomShe, 0);
    const SheSolution sol = solve_she_fd(0.0, spec, noise);
    double max_rel = 0.0;
    for (std::int64_t j = 0; j < spec.nx(); ++j) {
      const double x = spec.x_of(j);
      if (std::fabs(x) > 3.0) continue;
      const double exact = heat_kernel(1.0, x);
      max_rel = std::max(
          max_rel, std::fabs(sol.final_slice[static_cast<std::size_t>(j)] - exact) / exact);
    }
    ctx.row(0.0, "beta0_max_rel_error", max_rel, 0.0, 1);
    ctx.verdict("beta=0 field matches the heat kernel within 2%",
                max_rel < 0.02, "max relative error " + fmt(max_rel, 3));
    const double mass = p2l_Z(sol);
    ctx.row(0.0, "beta0_mass", mass, 0.0, 1);
    ctx.verdict("beta=0 mass within 1% of one", std::fabs(mass - 1.0) < 0.01,
                "mass " + fmt(mass, 6));
  }

  for (double beta : betas) {
    const SheDrawStats stats =
        she_draws(beta, spec, n_draws, ctx.seed(), ctx.threads());
    const EstimatorResult z0 = mean_stderr(stats.z_origin);
    ctx.row(beta, "z_origin_mean", z0.value, z0.stderr_, n_draws);
    z_verdict(ctx, "E[Z(1,0)] = rho(1,0) at beta=" + fmt(beta, 3), z0.value,
              rho10, z0.stderr_, 0.02 * rho10);

    const EstimatorResult p2l = mean_stderr(stats.p2l);
    ctx.row(beta, "p2l_mean", p2l.value, p2l.stderr_, n_draws);
    z_verdict(ctx, "E[P2L] = 1 at beta=" + fmt(beta, 3), p2l.value, 1.0,
              p2l.stderr_);

    SampleSet set;
    set.values = stats.p2l;
    set.label = "p2l";
    const double target = second_moment_closed_form(beta);
    const MomentComparison m2 = moment_compare(set, target, 2, ctx.seed());
    ctx.row(beta, "p2l_second_moment", m2.moment, m2.stderr_, n_draws);
    ctx.row(beta, "p2l_second_moment_target", target, 0.0, 1);
    z_verdict(ctx, "E[P2L^2] matches the norm series at beta=" + fmt(beta, 3),
              m2.moment, target, m2.stderr_, 0.05 * target);
  }
}

// ---------------------------------------------------------------------------
// p2p-mean: mean of the P2P function, the spatial-integral identity and
// shift invariance.

void run_p2p_mean(RunContext& ctx) {
  PolymerParams params{ctx.num("beta", 0.5), ctx.num("nu", 1.0),
                       ctx.num("r", 0.5), ctx.num("t", 1.0)};
  const std::int64_t n_envs = ctx.integer("n_envs", 4000);
  const std::int64_t n_paths = ctx.integer("n_paths", 4000);

  for (double x : {0.0, 0.5, 1.0}) {
    std::vector<double> values(static_cast<std::size_t>(n_envs));
    parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
      RandomStream stream(ctx.seed(), kDomEnv + i);
      const Environment env = sample_standard_environment(params, stream);
      RandomStream inner = stream.child(2);
      values[i] =
          p2p_W(env, params, {params.t, x}, n_paths, inner).value;
    });
    const EstimatorResult m = mean_stderr(values);
    ctx.row(params.t, "p2p_mean[x=" + fmt(x, 3) + "]", m.value, m.stderr_,
            n_envs);
    z_verdict(ctx, "E[W(t,x)] = rho(t,x) at x=" + fmt(x, 3), m.value,
              heat_kernel(params.t, x), m.stderr_);
  }

  {  // spatial integral of the P2P function vs the P2L value, one environment
    RandomStream stream(ctx.seed(), kDomEnv + (std::uint64_t(1) << 32));
    const Environment env = sample_standard_environment(params, stream);
    RandomStream inner = stream.child(3);
    const EstimatorResult w = renormalized_W(env, params, n_paths * 4, inner);
    const double span = 6.0 * std::sqrt(params.t) + params.r;
    const int intervals = 128;
    const double h = 2.0 * span / intervals;
    double integral = 0.0, var = 0.0;
    for (int j = 0; j <= intervals; ++j) {
      const double x = -span + j * h;
      const double wq =
          h / 3.0 * ((j == 0 || j == intervals) ? 1.0
                                                : (j % 2 == 1 ? 4.0 : 2.0));
      RandomStream node = stream.child(100 + std::uint64_t(j));
      const EstimatorResult val =
          p2p_W(env, params, {params.t, x}, n_paths, node);
      integral += wq * val.value;
      var += wq * wq * val.stderr_ * val.stderr_;
    }
    const double se = std::sqrt(var + w.stderr_ * w.stderr_);
    ctx.row(params.t, "p2p_spatial_integral", integral, std::sqrt(var),
            n_paths);
    ctx.row(params.t, "p2l_direct", w.value, w.stderr_, w.n);
    z_verdict(ctx, "int W(t,x) dx = W_t on one environment", integral,
              w.value, se, 1e-3);
  }

  {  // shift invariance in law
    const SpaceTimePoint from{0.25, 0.3};
    const SpaceTimePoint to{params.t, 0.5};
    std::vector<double> values(static_cast<std::size_t>(n_envs));
    parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
      RandomStream stream(ctx.seed(), kDomEnv + (std::uint64_t(2) << 32) + i);
      const Environment env = sample_standard_environment(params, stream);
      RandomStream inner = stream.child(4);
      values[i] =
          shifted_p2p_W(env, params, from, to, n_paths, inner).value;
    });
    const EstimatorResult m = mean_stderr(values);
    ctx.row(params.t, "shifted_p2p_mean", m.value, m.stderr_, n_envs);
    z_verdict(ctx, "E[W(s,y;t,x)] = rho(t-s, x-y)", m.value,
              heat_kernel(to.s - from.s, to.x - from.x), m.stderr_);
  }
}

// ---------------------------------------------------------------------------
// convergence: W_t against the point-to-line SHE law across the t grid.

double inner_target_for(double t) {
  return std::clamp(0.02 * std::sqrt(t / 10.0), 0.02, 0.10);
}

void run_convergence(RunContext& ctx) {
  ScalingSchedule schedule;
  schedule.beta_star = ctx.num("beta_star", 1.0);
  schedule.family = FixedNuR{ctx.num("nu0", 0.1), ctx.num("r0", 1.0)};
  const std::vector<double> t_grid =
      ctx.list("t_grid", {10.0, 100.0, 1000.0});
  const std::int64_t n_envs = ctx.integer("n_envs", 2000);
  const std::int64_t n_ref = ctx.integer("n_ref", 10000);
  const double ref_dx = ctx.num("ref_dx", 0.02);
  const int n_walkers = int(ctx.integer("n_walkers", 512));

  const std::vector<double> ref = she_p2l_samples(
      schedule.beta_star, ref_dx, 6.0, n_ref, ctx.seed(), ctx.threads());
  const double m2_target = second_moment_closed_form(schedule.beta_star);

  std::vector<double> ks_by_t;
  double final_mean_z = 0.0, final_m2_z = 0.0;
  for (double t : t_grid) {
    SmcOptions opts;
    opts.n_walkers = n_walkers;
    opts.min_replicates = 4;
    opts.max_replicates = 512;
    opts.rel_stderr_target = inner_target_for(t);
    const WDistributionResult w =
        sample_W_distribution(schedule, t, n_envs, opts, ctx.seed(),
                              ctx.threads());

    const double ks = ks_two_sample(w.values, ref);
    ks_by_t.push_back(ks);
    ctx.row(t, "ks_distance", ks, 0.0, n_envs);

    const EstimatorResult mean = mean_stderr(w.values);
    ctx.row(t, "w_mean", mean.value, mean.stderr_, n_envs);
    final_mean_z = (mean.value - 1.0) / mean.stderr_;

    double inner_var = 0.0;
    for (double se : w.inner_stderr) inner_var += se * se;
    inner_var /= double(w.inner_stderr.size());
    ctx.row(t, "inner_variance_mean", inner_var, 0.0, n_envs);

    SampleSet set;
    set.values = w.values;
    set.inner_stderr = w.inner_stderr;
    set.label = "W_t";
    MomentComparison m2 = moment_compare(set, m2_target, 2, ctx.seed());
    // discount the inner Monte Carlo noise from the raw second moment
    const double corrected = m2.moment - inner_var;
    ctx.row(t, "w_second_moment", corrected, m2.stderr_, n_envs);
    final_m2_z = (corrected - m2_target) / m2.stderr_;
  }
  ctx.row(t_grid.back(), "w_second_moment_target", m2_target, 0.0, 1);

  const TrendResult trend = trend_test(ks_by_t);
  ctx.row(t_grid.back(), "ks_trend_tau", trend.tau, 0.0,
          std::int64_t(ks_by_t.size()));
  ctx.verdict("KS(W_t, Z_beta*) decreasing in t", trend.decreasing,
              "tau " + fmt(trend.tau, 3) + ", ks " + fmt(ks_by_t.front(), 3) +
                  " -> " + fmt(ks_by_t.back(), 3));
  ctx.verdict("final-t mean z-score vs 1", std::fabs(final_mean_z) < 3.0,
              "z " + fmt(final_mean_z, 3));
  ctx.verdict("final-t second-moment z-score vs ||R||^2",
              std::fabs(final_m2_z) < 3.0, "z " + fmt(final_m2_z, 3));
}

// ---------------------------------------------------------------------------
// p2p-convergence: rescaled point-to-point values against the SHE field.

void run_p2p_convergence(RunContext& ctx) {
  ScalingSchedule schedule;
  schedule.beta_star = ctx.num("beta_star", 1.0);
  schedule.family = FixedNuR{ctx.num("nu0", 0.1), ctx.num("r0", 1.0)};
  const std::vector<double> t_grid =
      ctx.list("t_grid", {10.0, 100.0, 1000.0});
  const std::int64_t n_envs = ctx.integer("n_envs", 1200);
  const std::int64_t n_ref = ctx.integer("n_ref", 8000);
  const double ref_dx = ctx.num("ref_dx", 0.025);
  const int n_walkers = int(ctx.integer("n_walkers", 512));
  const double x_target = ctx.num("x", 0.5);
  const double rho_target = heat_kernel(1.0, x_target);

  const std::vector<double> ref =
      she_point_samples(schedule.beta_star, ref_dx, 6.0, x_target, n_ref,
                        ctx.seed(), ctx.threads());

  std::vector<double> ks_by_t;
  for (double t : t_grid) {
    SmcOptions opts;
    opts.n_walkers = n_walkers;
    opts.min_replicates = 4;
    opts.max_replicates = 512;
    opts.rel_stderr_target = inner_target_for(t);
    const PolymerParams params = schedule.eval(t);
    std::vector<double> values(static_cast<std::size_t>(n_envs));
    std::vector<double> inner_se(static_cast<std::size_t>(n_envs));
    parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
      RandomStream stream(ctx.seed(), kDomField + i);
      const Environment env = sample_standard_environment(params, stream);
      RandomStream inner = stream.child(5);
      const EstimatorResult y =
          rescaled_field_Y(env, schedule, t, 1.0, x_target, inner, opts);
      values[i] = y.value;
      inner_se[i] = y.stderr_;
    });
    const double ks = ks_two_sample(values, ref);
    ks_by_t.push_back(ks);
    ctx.row(t, "p2p_ks_distance", ks, 0.0, n_envs);
    const EstimatorResult mean = mean_stderr(values);
    ctx.row(t, "p2p_mean", mean.value, mean.stderr_, n_envs);
    z_verdict(ctx,
              "sqrt(t) W mean = rho(1," + fmt(x_target, 3) + ") at t=" +
                  fmt(t, 6),
              mean.value, rho_target, mean.stderr_);
  }
  const TrendResult trend = trend_test(ks_by_t);
  ctx.row(t_grid.back(), "p2p_ks_trend_tau", trend.tau, 0.0,
          std::int64_t(ks_by_t.size()));
  ctx.verdict("KS(sqrt(t) W, Z(1,X)) decreasing in t", trend.decreasing,
              "tau " + fmt(trend.tau, 3) + ", ks " + fmt(ks_by_t.front(), 3) +
                  " -> " + fmt(ks_by_t.back(), 3));
}

// ---------------------------------------------------------------------------
// poisson-she-residual: the weak-form balance on sampled environments.

void run_poisson_she_residual(RunContext& ctx) {
  PolymerParams params{ctx.num("beta", 0.5), ctx.num("nu", 1.0),
                       ctx.num("r", 0.5), ctx.num("t", 1.0)};
  const std::int64_t n_seeds = ctx.integer("seeds", 3);
  SheResidualOptions opts;
  opts.n_paths = ctx.integer("n_paths", 10000);
  const TestFunction phi = bump_test_function(ctx.num("phi_radius", 3.0));

  {  // nu = 0 reduces to the deterministic heat identity
    PolymerParams p0 = params;
    p0.nu = 0.0;
    Environment empty;
    empty.box = standard_box(params);
    empty.intensity = 0.0;
    RandomStream stream(ctx.seed(), kDomResidual);
    const SheResidualResult res =
        verify_poisson_she(empty, p0, phi, opts, stream);
    ctx.row(params.t, "residual[nu=0]", res.residual, res.mc_stderr, 1);
    ctx.verdict("nu=0 heat-equation residual below 1e-6",
                std::fabs(res.residual) < 1e-6,
                "residual " + fmt(res.residual, 3));
  }
  {  // beta = 0: W is the heat kernel and the noise term vanishes
    PolymerParams p0 = params;
    p0.beta = 0.0;
    RandomStream stream(ctx.seed(), kDomResidual + 1);
    const Environment env = sample_standard_environment(p0, stream);
    RandomStream inner = stream.child(1);
    const SheResidualResult res =
        verify_poisson_she(env, p0, phi, opts, inner);
    ctx.row(params.t, "residual[beta=0]", res.residual, res.mc_stderr, 1);
    ctx.verdict("beta=0 residual below 1e-6",
                std::fabs(res.residual) < 1e-6,
                "residual " + fmt(res.residual, 3));
  }
  for (std::int64_t s = 1; s <= n_seeds; ++s) {
    RandomStream stream(ctx.seed(), kDomResidual + 10 + std::uint64_t(s));
    const Environment env = sample_standard_environment(params, stream);
    RandomStream inner = stream.child(1);
    const SheResidualResult res =
        verify_poisson_she(env, params, phi, opts, inner);
    ctx.row(params.t, "residual[seed=" + std::to_string(s) + "]",
            res.residual, res.mc_stderr, opts.n_paths);
    ctx.row(params.t, "residual_budget[seed=" + std::to_string(s) + "]",
            res.error_budget, 0.0, opts.n_paths);
    ctx.verdict("weak SHE identity, seed " + std::to_string(s),
                std::fabs(res.residual) <= res.error_budget,
                "residual " + fmt(res.residual, 3) + " budget " +
                    fmt(res.error_budget, 3));
  }
}

// ---------------------------------------------------------------------------
// scaling-audit: the driving relations along the t grid for each family.

void run_scaling_audit(RunContext& ctx) {
  const double beta_star = ctx.num("beta_star", 1.0);
  const std::vector<double> t_grid =
      ctx.list("t_grid", {1e2, 1e3, 1e4, 1e5, 1e6});

  struct Family {
    std::string name;
    ScalingSchedule schedule;
    bool exact;  // relation (a) holds with equality
  };
  std::vector<Family> families;
  families.push_back({"fixed-nu-r", {beta_star, FixedNuR{1.0, 1.0}}, true});
  families.push_back({"fixed-beta", {beta_star, FixedBeta{1.0, 1.0}}, true});
  families.push_back(
      {"custom", {beta_star, CustomExponents{beta_star, 0.375, 1.0, 0.25,
                                             1.0, 0.0}},
       false});

  for (const auto& fam : families) {
    std::vector<double> bs, cs, ratio_err;
    for (double t : t_grid) {
      const PolymerParams p = fam.schedule.eval(t);
      const double lam = p.lambda();
      const double ratio_a = p.nu * p.r * p.r * lam * lam * std::sqrt(t) /
                             (beta_star * beta_star);
      const double val_b = p.nu * p.r * p.r * p.r * lam * lam * lam;
      const double val_c = p.r / std::sqrt(t);
      const double gamma = fam.schedule.gamma(t);
      const double consistency =
          p.nu * std::pow(t, 1.5) * gamma * gamma - 1.0;
      ctx.row(t, "ratio_a[" + fam.name + "]", ratio_a, 0.0, 1);
      ctx.row(t, "val_b[" + fam.name + "]", val_b, 0.0, 1);
      ctx.row(t, "val_c[" + fam.name + "]", val_c, 0.0, 1);
      ctx.row(t, "gamma[" + fam.name + "]", gamma, 0.0, 1);
      ctx.row(t, "gamma_consistency[" + fam.name + "]", consistency, 0.0, 1);
      bs.push_back(val_b);
      cs.push_back(val_c);
      ratio_err.push_back(std::fabs(ratio_a - 1.0));
      if (fam.exact) {
        ctx.verdict("relation (a) exact for " + fam.name + " at t=" +
                        fmt(t, 6),
                    std::fabs(ratio_a - 1.0) < 1e-12,
                    "ratio " + fmt(ratio_a, 12));
        ctx.verdict("nu t^{3/2} gamma^2 = 1 for " + fam.name + " at t=" +
                        fmt(t, 6),
                    std::fabs(consistency) < 1e-12,
                    "deviation " + fmt(consistency, 3));
      }
    }
    ctx.verdict("relation (b) decays for " + fam.name,
                trend_test(bs).decreasing,
                "tau " + fmt(trend_test(bs).tau, 3));
    ctx.verdict("relation (c) decays for " + fam.name,
                trend_test(cs).decreasing,
                "tau " + fmt(trend_test(cs).tau, 3));
    if (!fam.exact)
      ctx.verdict("relation (a) ratio -> 1 for " + fam.name,
                  trend_test(ratio_err).decreasing,
                  "deviations " + fmt(ratio_err.front(), 3) + " -> " +
                      fmt(ratio_err.back(), 3));
  }
}

// ---------------------------------------------------------------------------
// field-marginal: the fixed-(T, phi) marginal of the rescaled field against
// the SHE marginal.

void run_field_marginal(RunContext& ctx) {
  ScalingSchedule schedule;
  schedule.beta_star = ctx.num("beta_star", 1.0);
  schedule.family = FixedNuR{ctx.num("nu0", 0.1), ctx.num("r0", 1.0)};
  const std::vector<double> t_grid = ctx.list("t_grid", {10.0, 60.0, 300.0});
  const std::int64_t n_envs = ctx.integer("n_envs", 300);
  const std::int64_t n_ref = ctx.integer("n_ref", 2000);
  const double ref_dx = ctx.num("ref_dx", 0.025);
  const TestFunction phi = bump_test_function(ctx.num("phi_radius", 3.0));
  const int n_walkers = int(ctx.integer("n_walkers", 192));

  // reference: int Z(1, X) phi(X) dX over noise draws
  std::vector<double> ref(static_cast<std::size_t>(n_ref));
  {
    SheGridSpec spec{ref_dx * ref_dx / 4.0, ref_dx, 1.0, 6.0};
    parallel_for(static_cast<std::size_t>(n_ref), ctx.threads(), [&](std::size_t i) {
      StreamedNoise noise(spec.dt, spec.dx, spec.nx(),
                          ctx.seed() ^ kDomShe, std::uint64_t(i));
      const SheSolution sol = solve_she_fd(schedule.beta_star, spec, noise);
      ref[i] = test_against_phi(sol, phi.value);
    });
  }

  const GaussRule& gl = gauss_legendre(16);
  std::vector<double> ks_by_t;
  for (double t : t_grid) {
    SmcOptions opts;
    opts.n_walkers = n_walkers;
    opts.min_replicates = 2;
    opts.max_replicates = 64;
    opts.rel_stderr_target = 0.15;
    const PolymerParams params = schedule.eval(t);
    std::vector<double> values(static_cast<std::size_t>(n_envs));
    parallel_for(static_cast<std::size_t>(n_envs), ctx.threads(), [&](std::size_t i) {
      RandomStream stream(ctx.seed(), kDomField + (std::uint64_t(3) << 40) + i);
      const Environment env = sample_standard_environment(params, stream);
      double sum = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double x = phi.support_radius * gl.nodes[q];
        const double w = phi.support_radius * gl.weights[q];
        RandomStream inner = stream.child(10 + q);
        const EstimatorResult y =
            rescaled_field_Y(env, schedule, t, 1.0, x, inner, opts);
        sum += w * phi.value(x) * y.value;
      }
      values[i] = sum;
    });
    const double ks = ks_two_sample(values, ref);
    ks_by_t.push_back(ks);
    ctx.row(t, "field_marginal_ks", ks, 0.0, n_envs);
    const EstimatorResult mean = mean_stderr(values);
    ctx.row(t, "field_marginal_mean", mean.value, mean.stderr_, n_envs);
  }
  const TrendResult trend = trend_test(ks_by_t);
  ctx.row(t_grid.back(), "field_marginal_ks_tau", trend.tau, 0.0,
          std::int64_t(ks_by_t.size()));
  ctx.verdict("field-marginal KS decreasing in t", trend.decreasing,
              "tau " + fmt(trend.tau, 3));
}

}  // namespace

const std::vector<ExperimentDef>& experiment_registry() {
  static const std::vector<ExperimentDef> registry = {
      {"env-check", {"nu", "r", "t", "n_envs"}, run_env_check},
      {"wt-mean",
       {"betas", "nus", "r", "t", "n_envs", "n_paths"},
       run_wt_mean},
      {"zt-mean",
       {"betas", "nus", "r", "t", "n_envs", "n_paths"},
       run_zt_mean},
      {"chaos-vs-direct",
       {"beta", "nu", "r", "t", "seeds", "first_seed", "n_paths", "max_order"},
       run_chaos_vs_direct},
      {"covariance", {"nu", "n_envs"}, run_covariance},
      {"fock-norms", {"beta", "order", "mc_samples"}, run_fock_norms},
      {"she-moments", {"dx", "x_max", "n_draws", "betas"}, run_she_moments},
      {"p2p-mean",
       {"beta", "nu", "r", "t", "n_envs", "n_paths"},
       run_p2p_mean},
      {"convergence",
       {"beta_star", "nu0", "r0", "t_grid", "n_envs", "n_ref", "ref_dx",
        "n_walkers"},
       run_convergence},
      {"p2p-convergence",
       {"beta_star", "nu0", "r0", "t_grid", "n_envs", "n_ref", "ref_dx",
        "n_walkers", "x"},
       run_p2p_convergence},
      {"poisson-she-residual",
       {"beta", "nu", "r", "t", "seeds", "n_paths", "phi_radius"},
       run_poisson_she_residual},
      {"scaling-audit", {"beta_star", "t_grid"}, run_scaling_audit},
      {"field-marginal",
       {"beta_star", "nu0", "r0", "t_grid", "n_envs", "n_ref", "ref_dx",
        "phi_radius", "n_walkers"},
       run_field_marginal},
  };
  return registry;
}

}  // namespace polysim

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

#include "polysim.h"

#include <cstring>
#include <string>

#include "polysim/chaos.hpp"
#include "polysim/experiments.hpp"
#include "polysim/heat_kernel.hpp"
#include "polysim/polymer.hpp"
#include "polysim/polymer_mc.hpp"
#include "polysim/schedule.hpp"
#include "polysim/she.hpp"
#include "polysim/stats.hpp"
#include "polysim/version.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown"; }

// Maps C++ exceptions onto status codes; the handle layer never lets an
// exception cross the C boundary.
template <typename Fn>
polysim_status guarded(Fn&& fn) {
  try {
    fn();
    return POLYSIM_OK;
  } catch (const polysim::CapacityError& e) {
    set_error(e.what());
    return POLYSIM_E_CAPACITY;
  } catch (const polysim::BudgetExceededError& e) {
    set_error(e.what());
    return POLYSIM_E_BUDGET;
  } catch (const polysim::ToleranceError& e) {
    set_error(e.what());
    return POLYSIM_E_TOLERANCE;
  } catch (const polysim::ConfigError& e) {
    set_error(e.what());
    return POLYSIM_E_CONFIG;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return POLYSIM_E_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return POLYSIM_E_DOMAIN;
  } catch (const std::exception& e) {
    set_error(e.what());
    return POLYSIM_E_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return POLYSIM_E_INTERNAL;
  }
}

}  // namespace

struct polysim_stream {
  polysim::RandomStream impl;
};

struct polysim_env {
  polysim::Environment impl;
};

struct polysim_schedule {
  polysim::ScalingSchedule impl;
};

extern "C" {

const char* polysim_version(void) { return polysim::kVersion; }

const char* polysim_last_error(void) { return g_last_error.c_str(); }

const char* polysim_status_name(polysim_status status) {
  switch (status) {
    case POLYSIM_OK: return "ok";
    case POLYSIM_E_DOMAIN: return "domain-error";
    case POLYSIM_E_CAPACITY: return "capacity-error";
    case POLYSIM_E_BUDGET: return "budget-exceeded";
    case POLYSIM_E_TOLERANCE: return "tolerance-error";
    case POLYSIM_E_CONFIG: return "config-error";
    case POLYSIM_E_INVALID: return "invalid-argument";
    default: return "internal-error";
  }
}

polysim_status polysim_heat_kernel(double s, double x, double* out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = polysim::heat_kernel(s, x); });
}

polysim_status polysim_lambda_of_beta(double beta, double* out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = polysim::lambda_of_beta(beta); });
}

polysim_status polysim_dirichlet_simplex_constant(int k, double* out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = polysim::dirichlet_simplex_constant(k); });
}

polysim_status polysim_fock_norm_rho(double beta, int order, double* partial,
                                     double* tail_bound) {
  if (!partial || !tail_bound) return POLYSIM_E_INVALID;
  return guarded([&] {
    const polysim::FockNorm norm = polysim::fock_norm_rho(beta, order);
    *partial = norm.partial_sum;
    *tail_bound = norm.tail_bound;
  });
}

polysim_status polysim_she_second_moment(double beta, double* out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = polysim::second_moment_closed_form(beta); });
}

polysim_status polysim_stream_new(uint64_t seed, uint64_t substream,
                                  polysim_stream** out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] {
    *out = new polysim_stream{polysim::RandomStream(seed, substream)};
  });
}

void polysim_stream_free(polysim_stream* stream) { delete stream; }

polysim_status polysim_stream_uniform(polysim_stream* stream, double* out) {
  if (!stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = stream->impl.uniform(); });
}

polysim_status polysim_stream_normal(polysim_stream* stream, double* out) {
  if (!stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = stream->impl.normal(); });
}

polysim_status polysim_stream_poisson(polysim_stream* stream, double mean,
                                      int64_t* out) {
  if (!stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = stream->impl.poisson(mean); });
}

polysim_status polysim_env_sample(double t_max, double x_min, double x_max,
                                  double intensity, polysim_stream* stream,
                                  polysim_env** out) {
  if (!stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] {
    const polysim::SpaceTimeBox box{0.0, t_max, x_min, x_max};
    *out = new polysim_env{
        polysim::sample_environment(box, intensity, stream->impl)};
  });
}

void polysim_env_free(polysim_env* env) { delete env; }

int64_t polysim_env_size(const polysim_env* env) {
  return env ? int64_t(env->impl.points.size()) : -1;
}

polysim_status polysim_env_points(const polysim_env* env, double* times,
                                  double* positions, int64_t capacity,
                                  int64_t* total) {
  if (!env || !total) return POLYSIM_E_INVALID;
  *total = int64_t(env->impl.points.size());
  const int64_t n = std::min<int64_t>(capacity, *total);
  for (int64_t i = 0; i < n; ++i) {
    if (times) times[i] = env->impl.points[static_cast<std::size_t>(i)].s;
    if (positions) positions[i] = env->impl.points[static_cast<std::size_t>(i)].x;
  }
  return POLYSIM_OK;
}

namespace {

polysim::PolymerParams make_params(double beta, double nu, double r,
                                   double t) {
  return polysim::PolymerParams{beta, nu, r, t};
}

void copy_estimate(const polysim::EstimatorResult& in, polysim_estimate* out) {
  out->value = in.value;
  out->stderr_ = in.stderr_;
  out->n = in.n;
}

}  // namespace

polysim_status polysim_partition_z(const polysim_env* env, double beta,
                                   double nu, double r, double t,
                                   int64_t n_paths, polysim_stream* stream,
                                   polysim_estimate* out) {
  if (!env || !stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] {
    copy_estimate(polysim::partition_Z(env->impl, make_params(beta, nu, r, t),
                                       n_paths, stream->impl),
                  out);
  });
}

polysim_status polysim_renormalized_w(const polysim_env* env, double beta,
                                      double nu, double r, double t,
                                      int64_t n_paths, polysim_stream* stream,
                                      polysim_estimate* out) {
  if (!env || !stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] {
    copy_estimate(
        polysim::renormalized_W(env->impl, make_params(beta, nu, r, t),
                                n_paths, stream->impl),
        out);
  });
}

polysim_status polysim_p2p_w(const polysim_env* env, double beta, double nu,
                             double r, double t, double x_end,
                             int64_t n_paths, polysim_stream* stream,
                             polysim_estimate* out) {
  if (!env || !stream || !out) return POLYSIM_E_INVALID;
  return guarded([&] {
    copy_estimate(polysim::p2p_W(env->impl, make_params(beta, nu, r, t),
                                 {t, x_end}, n_paths, stream->impl),
                  out);
  });
}

polysim_status polysim_chaos_w(const polysim_env* env, double beta, double nu,
                               double r, double t, int order, double* value,
                               double* tail_bound) {
  if (!env || !value || !tail_bound) return POLYSIM_E_INVALID;
  return guarded([&] {
    const polysim::ChaosResult res = polysim::chaos_reconstruct_W(
        env->impl, make_params(beta, nu, r, t), order);
    *value = res.value;
    *tail_bound = res.tail_l2;
  });
}

polysim_status polysim_schedule_fixed_nu_r(double beta_star, double nu0,
                                           double r0, polysim_schedule** out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] {
    *out = new polysim_schedule{
        polysim::ScalingSchedule{beta_star, polysim::FixedNuR{nu0, r0}}};
  });
}

polysim_status polysim_schedule_fixed_beta(double beta_star, double beta0,
                                           double r0, polysim_schedule** out) {
  if (!out) return POLYSIM_E_INVALID;
  return guarded([&] {
    *out = new polysim_schedule{
        polysim::ScalingSchedule{beta_star, polysim::FixedBeta{beta0, r0}}};
  });
}

void polysim_schedule_free(polysim_schedule* schedule) { delete schedule; }

polysim_status polysim_schedule_eval(const polysim_schedule* schedule,
                                     double t, double* beta, double* nu,
                                     double* r) {
  if (!schedule || !beta || !nu || !r) return POLYSIM_E_INVALID;
  return guarded([&] {
    const polysim::PolymerParams p = schedule->impl.eval(t);
    *beta = p.beta;
    *nu = p.nu;
    *r = p.r;
  });
}

polysim_status polysim_schedule_gamma(const polysim_schedule* schedule,
                                      double t, double* out) {
  if (!schedule || !out) return POLYSIM_E_INVALID;
  return guarded([&] { *out = schedule->impl.gamma(t); });
}

polysim_status polysim_sample_w(const polysim_schedule* schedule, double t,
                                int64_t n_envs, double rel_stderr_target,
                                uint64_t seed, int threads, double* values,
                                double* inner_stderr) {
  if (!schedule || !values) return POLYSIM_E_INVALID;
  return guarded([&] {
    polysim::SmcOptions opts;
    opts.rel_stderr_target = rel_stderr_target;
    const polysim::WDistributionResult res = polysim::sample_W_distribution(
        schedule->impl, t, n_envs, opts, seed, threads);
    for (int64_t i = 0; i < n_envs; ++i) {
      values[i] = res.values[static_cast<std::size_t>(i)];
      if (inner_stderr) inner_stderr[i] = res.inner_stderr[static_cast<std::size_t>(i)];
    }
  });
}

polysim_status polysim_ks_two_sample(const double* a, int64_t na,
                                     const double* b, int64_t nb,
                                     double* out) {
  if (!a || !b || !out) return POLYSIM_E_INVALID;
  return guarded([&] {
    *out = polysim::ks_two_sample(
        std::span<const double>(a, static_cast<std::size_t>(na)),
        std::span<const double>(b, static_cast<std::size_t>(nb)));
  });
}

int polysim_run_experiment(const char* experiment,
                           const polysim_run_options* options) {
  if (!experiment) {
    set_error("experiment name is null");
    return 2;
  }
  polysim::RunOptions opts;
  opts.experiment = experiment;
  if (options) {
    if (options->config_path) opts.config_path = options->config_path;
    if (options->out_dir) opts.out_dir = options->out_dir;
    if (options->t_grid) opts.t_grid = options->t_grid;
    if (options->has_seed) opts.seed = options->seed;
    opts.threads = options->threads;
  }
  try {
    return polysim::run_experiment(opts);
  } catch (const std::exception& e) {
    set_error(e.what());
    return 2;
  }
}

int polysim_experiment_count(void) {
  return int(polysim::experiment_registry().size());
}

const char* polysim_experiment_name(int index) {
  const auto& registry = polysim::experiment_registry();
  if (index < 0 || index >= int(registry.size())) return nullptr;
  return registry[static_cast<std::size_t>(index)].name.c_str();
}

}  // extern "C"

/* Copyright 2026 The polysim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the polysim shared library: opaque handles, status codes,
 * thread-local error messages.  All functions returning polysim_status set
 * the last-error string on failure. */

#ifndef POLYSIM_H
#define POLYSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int polysim_status;

enum {
  POLYSIM_OK = 0,
  POLYSIM_E_DOMAIN = 1,    /* precondition violated */
  POLYSIM_E_CAPACITY = 2,  /* combinatorial order above the configured max */
  POLYSIM_E_BUDGET = 3,    /* sampling budget exhausted before the target */
  POLYSIM_E_TOLERANCE = 4, /* quadrature tolerance not certified */
  POLYSIM_E_CONFIG = 5,    /* configuration file or option error */
  POLYSIM_E_INVALID = 6,   /* null handle or bad argument */
  POLYSIM_E_INTERNAL = 7
};

const char *polysim_version(void);
/* Thread-local message describing the most recent failure. */
const char *polysim_last_error(void);
const char *polysim_status_name(polysim_status status);

/* ------------------------------------------------------------------ */
/* scalar functions                                                    */

polysim_status polysim_heat_kernel(double s, double x, double *out);
polysim_status polysim_lambda_of_beta(double beta, double *out);
polysim_status polysim_dirichlet_simplex_constant(int k, double *out);
/* Partial sum of the squared Fock norm of (beta^k rho^k) up to `order`,
 * plus a rigorous tail bound. */
polysim_status polysim_fock_norm_rho(double beta, int order, double *partial,
                                     double *tail_bound);
/* Closed-form E[Z_beta^2] of the point-to-line partition function. */
polysim_status polysim_she_second_moment(double beta, double *out);

/* ------------------------------------------------------------------ */
/* random streams                                                      */

typedef struct polysim_stream polysim_stream;

polysim_status polysim_stream_new(uint64_t seed, uint64_t substream,
                                  polysim_stream **out);
void polysim_stream_free(polysim_stream *stream);
polysim_status polysim_stream_uniform(polysim_stream *stream, double *out);
polysim_status polysim_stream_normal(polysim_stream *stream, double *out);
polysim_status polysim_stream_poisson(polysim_stream *stream, double mean,
                                      int64_t *out);

/* ------------------------------------------------------------------ */
/* environments                                                        */

typedef struct polysim_env polysim_env;

/* Poisson sample on [0, t_max] x [x_min, x_max], sorted by time. */
polysim_status polysim_env_sample(double t_max, double x_min, double x_max,
                                  double intensity, polysim_stream *stream,
                                  polysim_env **out);
void polysim_env_free(polysim_env *env);
int64_t polysim_env_size(const polysim_env *env);
/* Copies up to capacity point coordinates; returns the total count. */
polysim_status polysim_env_points(const polysim_env *env, double *times,
                                  double *positions, int64_t capacity,
                                  int64_t *total);

typedef struct {
  double value;
  double stderr_;
  int64_t n;
} polysim_estimate;

/* Inner Monte Carlo estimates for one environment. */
polysim_status polysim_partition_z(const polysim_env *env, double beta,
                                   double nu, double r, double t,
                                   int64_t n_paths, polysim_stream *stream,
                                   polysim_estimate *out);
polysim_status polysim_renormalized_w(const polysim_env *env, double beta,
                                      double nu, double r, double t,
                                      int64_t n_paths, polysim_stream *stream,
                                      polysim_estimate *out);
polysim_status polysim_p2p_w(const polysim_env *env, double beta, double nu,
                             double r, double t, double x_end,
                             int64_t n_paths, polysim_stream *stream,
                             polysim_estimate *out);
/* Chaos reconstruction of W_t up to order K with its L2 tail bound. */
polysim_status polysim_chaos_w(const polysim_env *env, double beta, double nu,
                               double r, double t, int order, double *value,
                               double *tail_bound);

/* ------------------------------------------------------------------ */
/* intermediate-disorder schedules                                     */

typedef struct polysim_schedule polysim_schedule;

polysim_status polysim_schedule_fixed_nu_r(double beta_star, double nu0,
                                           double r0, polysim_schedule **out);
polysim_status polysim_schedule_fixed_beta(double beta_star, double beta0,
                                           double r0, polysim_schedule **out);
void polysim_schedule_free(polysim_schedule *schedule);
polysim_status polysim_schedule_eval(const polysim_schedule *schedule,
                                     double t, double *beta, double *nu,
                                     double *r);
polysim_status polysim_schedule_gamma(const polysim_schedule *schedule,
                                      double t, double *out);

/* i.i.d. W_t samples, one per environment (sequential Monte Carlo inner
 * estimator).  values and inner_stderr must hold n_envs doubles;
 * inner_stderr may be NULL. */
polysim_status polysim_sample_w(const polysim_schedule *schedule, double t,
                                int64_t n_envs, double rel_stderr_target,
                                uint64_t seed, int threads, double *values,
                                double *inner_stderr);

/* ------------------------------------------------------------------ */
/* statistics                                                          */

polysim_status polysim_ks_two_sample(const double *a, int64_t na,
                                     const double *b, int64_t nb,
                                     double *out);

/* ------------------------------------------------------------------ */
/* experiment runner                                                   */

typedef struct {
  const char *config_path; /* NULL: defaults */
  const char *out_dir;     /* NULL: $POLYSIM_OUT or "results" */
  const char *t_grid;      /* NULL or "a,b,c" override */
  uint64_t seed;
  int has_seed;
  int threads; /* 0: hardware */
} polysim_run_options;

/* Runs a named experiment, writing results.csv, summary.txt and
 * manifest.json to the output directory.  Returns the process exit code:
 * 0 pass, 1 acceptance failure, 2 usage/config error, 3 budget exceeded. */
int polysim_run_experiment(const char *experiment,
                           const polysim_run_options *options);

/* Number of experiments, and the name of the i-th one. */
int polysim_experiment_count(void);
const char *polysim_experiment_name(int index);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLYSIM_H */

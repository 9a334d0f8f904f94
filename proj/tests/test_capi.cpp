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

// Exercises the shared library strictly through the C interface.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "polysim.h"

TEST_CASE("version and status strings") {
  CHECK(std::strlen(polysim_version()) > 0);
  CHECK(std::string(polysim_status_name(POLYSIM_OK)) == "ok");
  CHECK(std::string(polysim_status_name(POLYSIM_E_DOMAIN)) == "domain-error");
}

TEST_CASE("scalar functions and error reporting") {
  double out = 0.0;
  REQUIRE(polysim_heat_kernel(1.0, 0.0, &out) == POLYSIM_OK);
  CHECK(out == doctest::Approx(0.3989422804014327));
  CHECK(polysim_heat_kernel(-1.0, 0.0, &out) == POLYSIM_E_DOMAIN);
  CHECK(std::strlen(polysim_last_error()) > 0);
  CHECK(polysim_heat_kernel(1.0, 0.0, nullptr) == POLYSIM_E_INVALID);

  REQUIRE(polysim_lambda_of_beta(1.0, &out) == POLYSIM_OK);
  CHECK(out == doctest::Approx(1.718281828459045));

  REQUIRE(polysim_dirichlet_simplex_constant(2, &out) == POLYSIM_OK);
  CHECK(out == doctest::Approx(3.141592653589793));
  CHECK(polysim_dirichlet_simplex_constant(0, &out) == POLYSIM_E_DOMAIN);

  double partial = 0.0, tail = 0.0;
  REQUIRE(polysim_fock_norm_rho(1.0, 30, &partial, &tail) == POLYSIM_OK);
  CHECK(partial == doctest::Approx(1.9523604891825571));
  CHECK(tail < 1e-12);
  REQUIRE(polysim_she_second_moment(0.5, &out) == POLYSIM_OK);
  CHECK(out == doctest::Approx(1.1582735720912207));
}

TEST_CASE("streams through opaque handles are deterministic") {
  polysim_stream* a = nullptr;
  polysim_stream* b = nullptr;
  REQUIRE(polysim_stream_new(42, 7, &a) == POLYSIM_OK);
  REQUIRE(polysim_stream_new(42, 7, &b) == POLYSIM_OK);
  for (int i = 0; i < 100; ++i) {
    double ua = 0.0, ub = 0.0;
    REQUIRE(polysim_stream_uniform(a, &ua) == POLYSIM_OK);
    REQUIRE(polysim_stream_uniform(b, &ub) == POLYSIM_OK);
    CHECK(ua == ub);
  }
  int64_t k = -1;
  REQUIRE(polysim_stream_poisson(a, 3.0, &k) == POLYSIM_OK);
  CHECK(k >= 0);
  CHECK(polysim_stream_poisson(a, -1.0, &k) == POLYSIM_E_DOMAIN);
  polysim_stream_free(a);
  polysim_stream_free(b);
}

TEST_CASE("environments and polymer estimates") {
  polysim_stream* stream = nullptr;
  REQUIRE(polysim_stream_new(1, 0, &stream) == POLYSIM_OK);
  polysim_env* env = nullptr;
  REQUIRE(polysim_env_sample(1.0, -6.5, 6.5, 1.0, stream, &env) == POLYSIM_OK);
  const int64_t n = polysim_env_size(env);
  CHECK(n >= 0);
  std::vector<double> times(static_cast<std::size_t>(n)),
      xs(static_cast<std::size_t>(n));
  int64_t total = 0;
  REQUIRE(polysim_env_points(env, times.data(), xs.data(), n, &total) ==
          POLYSIM_OK);
  CHECK(total == n);
  for (int64_t i = 1; i < n; ++i)
    CHECK(times[std::size_t(i - 1)] <= times[std::size_t(i)]);

  polysim_estimate est{};
  // beta = 0 gives the exact value one
  REQUIRE(polysim_renormalized_w(env, 0.0, 1.0, 0.5, 1.0, 100, stream,
                                 &est) == POLYSIM_OK);
  CHECK(est.value == 1.0);
  CHECK(est.stderr_ == 0.0);
  REQUIRE(polysim_partition_z(env, 0.5, 1.0, 0.5, 1.0, 5000, stream, &est) ==
          POLYSIM_OK);
  CHECK(est.value > 0.0);
  CHECK(polysim_partition_z(env, 0.5, 1.0, 0.5, 1.0, 1, stream, &est) ==
        POLYSIM_E_DOMAIN);

  double rho = 0.0;
  polysim_heat_kernel(1.0, 0.3, &rho);
  REQUIRE(polysim_p2p_w(env, 0.0, 1.0, 0.5, 1.0, 0.3, 100, stream, &est) ==
          POLYSIM_OK);
  CHECK(est.value == doctest::Approx(rho).epsilon(1e-12));

  double value = 0.0, tail = 0.0;
  REQUIRE(polysim_chaos_w(env, 0.0, 1.0, 0.5, 1.0, 2, &value, &tail) ==
          POLYSIM_OK);
  CHECK(value == 1.0);
  CHECK(polysim_chaos_w(env, 0.3, 1.0, 0.5, 1.0, 9, &value, &tail) ==
        POLYSIM_E_CAPACITY);

  polysim_env_free(env);
  polysim_stream_free(stream);
}

TEST_CASE("schedules and W sampling") {
  polysim_schedule* sched = nullptr;
  REQUIRE(polysim_schedule_fixed_nu_r(1.0, 1.0, 1.0, &sched) == POLYSIM_OK);
  double beta = 0.0, nu = 0.0, r = 0.0;
  REQUIRE(polysim_schedule_eval(sched, 1e4, &beta, &nu, &r) == POLYSIM_OK);
  CHECK(beta == doctest::Approx(std::log(1.1)));
  double gamma = 0.0;
  REQUIRE(polysim_schedule_gamma(sched, 1e4, &gamma) == POLYSIM_OK);
  CHECK(gamma == doctest::Approx(1e-3));
  CHECK(polysim_schedule_eval(sched, -1.0, &beta, &nu, &r) ==
        POLYSIM_E_DOMAIN);
  polysim_schedule_free(sched);

  polysim_schedule* s2 = nullptr;
  REQUIRE(polysim_schedule_fixed_nu_r(1.0, 0.25, 1.0, &s2) == POLYSIM_OK);
  const int64_t n_envs = 150;
  std::vector<double> values(n_envs), inner(n_envs);
  REQUIRE(polysim_sample_w(s2, 10.0, n_envs, 0.1, 9, 0, values.data(),
                           inner.data()) == POLYSIM_OK);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(n_envs);
  CHECK(mean > 0.3);
  CHECK(mean < 2.5);
  CHECK(polysim_sample_w(s2, 10.0, 10, 0.1, 9, 0, values.data(), nullptr) ==
        POLYSIM_E_DOMAIN);
  polysim_schedule_free(s2);
}

TEST_CASE("KS statistic through the C surface") {
  std::vector<double> a(100), b(100);
  for (int i = 0; i < 100; ++i) {
    a[std::size_t(i)] = i;
    b[std::size_t(i)] = i + 0.5;
  }
  double d = -1.0;
  REQUIRE(polysim_ks_two_sample(a.data(), 100, b.data(), 100, &d) ==
          POLYSIM_OK);
  CHECK(d > 0.0);
  REQUIRE(polysim_ks_two_sample(a.data(), 100, a.data(), 100, &d) ==
          POLYSIM_OK);
  CHECK(d == 0.0);
}

TEST_CASE("experiment listing and runner round trip") {
  CHECK(polysim_experiment_count() == 13);
  bool found = false;
  for (int i = 0; i < polysim_experiment_count(); ++i)
    if (std::string(polysim_experiment_name(i)) == "scaling-audit")
      found = true;
  CHECK(found);
  CHECK(polysim_experiment_name(99) == nullptr);

  const auto dir =
      std::filesystem::temp_directory_path() / "polysim_capi_run";
  std::filesystem::remove_all(dir);
  const std::string dir_str = dir.string();
  polysim_run_options options{};
  options.out_dir = dir_str.c_str();
  options.seed = 4;
  options.has_seed = 1;
  CHECK(polysim_run_experiment("scaling-audit", &options) == 0);
  CHECK(std::filesystem::exists(dir / "results.csv"));
  CHECK(polysim_run_experiment("not-an-experiment", &options) == 2);
}

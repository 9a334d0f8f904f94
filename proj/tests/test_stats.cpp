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

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "polysim/rng.hpp"
#include "polysim/stats.hpp"

using namespace polysim;

TEST_CASE("mean and stderr on hand-computed inputs") {
  const std::vector<double> constant{1.0, 1.0, 1.0, 1.0};
  const EstimatorResult a = mean_stderr(constant);
  CHECK(a.value == 1.0);
  CHECK(a.stderr_ == 0.0);

  const std::vector<double> pair{0.0, 2.0};
  const EstimatorResult b = mean_stderr(pair);
  CHECK(b.value == 1.0);
  CHECK(b.stderr_ == doctest::Approx(1.0));  // sd sqrt(2), over sqrt(2)

  RandomStream s(1, 0);
  std::vector<double> normals(100000);
  for (auto& v : normals) v = s.normal();
  const EstimatorResult c = mean_stderr(normals);
  CHECK(std::fabs(c.value) < 3.0 * c.stderr_);
  CHECK(c.stderr_ == doctest::Approx(1.0 / std::sqrt(1e5)).epsilon(0.05));

  const std::vector<double> tiny{1.0};
  CHECK_THROWS_AS((void)mean_stderr(tiny), std::domain_error);
}

TEST_CASE("duplicating a sample halves the stderr by sqrt(2)") {
  RandomStream s(2, 0);
  std::vector<double> v(5000);
  for (auto& x : v) x = s.normal() * 2.0 + 1.0;
  std::vector<double> doubled(v);
  doubled.insert(doubled.end(), v.begin(), v.end());
  const EstimatorResult base = mean_stderr(v);
  const EstimatorResult twice = mean_stderr(doubled);
  CHECK(twice.stderr_ ==
        doctest::Approx(base.stderr_ / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("KS distance: identity, shift and the null quantile") {
  RandomStream s(3, 0);
  std::vector<double> u1(10000), u2(10000), shifted(10000);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    u1[i] = s.uniform();
    u2[i] = s.uniform();
    shifted[i] = s.uniform() + 0.5;
  }
  CHECK(ks_two_sample(u1, u1) == 0.0);
  CHECK(ks_two_sample(u1, u2) == ks_two_sample(u2, u1));
  CHECK(ks_two_sample(u1, shifted) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(ks_two_sample(u1, u2) < ks_critical_value(0.01, u1.size(), u2.size()));
  const std::vector<double> small{1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)ks_two_sample(small, u1), std::domain_error);
}

TEST_CASE("KS is invariant under common increasing transformations") {
  RandomStream s(4, 0);
  std::vector<double> a(2000), b(2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = s.normal();
    b[i] = s.normal() * 1.3 + 0.2;
  }
  const double base = ks_two_sample(a, b);
  auto mapped = [&](double (*f)(double)) {
    std::vector<double> ma(a.size()), mb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      ma[i] = f(a[i]);
      mb[i] = f(b[i]);
    }
    return ks_two_sample(ma, mb);
  };
  CHECK(mapped([](double x) { return std::exp(x); }) ==
        doctest::Approx(base).epsilon(1e-12));
  CHECK(mapped([](double x) { return 3.0 * x - 7.0; }) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("moment comparison with bootstrap standard errors") {
  SampleSet ones;
  ones.values.assign(200, 1.0);
  const MomentComparison exact = moment_compare(ones, 1.0, 2);
  CHECK(exact.moment == 1.0);
  CHECK(exact.z == 0.0);

  RandomStream s(5, 0);
  SampleSet normals;
  normals.values.resize(20000);
  for (auto& v : normals.values) v = s.normal();
  const MomentComparison second = moment_compare(normals, 1.0, 2);
  CHECK(std::fabs(second.z) < 3.5);

  SampleSet exps;
  exps.values.resize(20000);
  for (auto& v : exps.values) v = s.exponential();
  const MomentComparison first = moment_compare(exps, 1.0, 1);
  CHECK(std::fabs(first.z) < 3.5);

  // doubling the resamples moves the bootstrap stderr by little
  const MomentComparison m1 = moment_compare(normals, 1.0, 2, 99, 1000);
  const MomentComparison m2 = moment_compare(normals, 1.0, 2, 99, 2000);
  CHECK(std::fabs(m1.stderr_ - m2.stderr_) / m1.stderr_ < 0.05);

  SampleSet small;
  small.values.assign(10, 1.0);
  CHECK_THROWS_AS((void)moment_compare(small, 1.0, 2), std::domain_error);
  CHECK_THROWS_AS((void)moment_compare(normals, 1.0, 5), std::domain_error);
}

TEST_CASE("trend verdicts with hand-counted Kendall tau") {
  const std::vector<double> down{3.0, 2.0, 1.0};
  CHECK(trend_test(down).tau == doctest::Approx(-1.0));
  CHECK(trend_test(down).decreasing);

  const std::vector<double> up{1.0, 2.0, 3.0};
  CHECK(trend_test(up).tau == doctest::Approx(1.0));
  CHECK_FALSE(trend_test(up).decreasing);

  const std::vector<double> mixed{0.30, 0.18, 0.21, 0.09};
  const TrendResult t = trend_test(mixed);
  CHECK(t.tau == doctest::Approx(-0.6666666666667).epsilon(1e-9));
  CHECK(t.decreasing);

  const std::vector<double> two{1.0, 0.0};
  CHECK_THROWS_AS((void)trend_test(two), std::domain_error);
}

TEST_CASE("regularized gamma tail against known chi-square points") {
  // P(chi2_1 > 3.841) = 0.05, P(chi2_5 > 15.086) = 0.01
  CHECK(gamma_q(0.5, 3.841 / 2.0) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(gamma_q(2.5, 15.086 / 2.0) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(gamma_q(1.0, 0.0) == 1.0);
}

TEST_CASE("chi-square Poisson fit accepts the truth and rejects a shift") {
  RandomStream s(6, 0);
  std::vector<std::int64_t> good(20000), bad(20000);
  for (std::size_t i = 0; i < good.size(); ++i) {
    good[i] = s.poisson(4.0);
    bad[i] = s.poisson(4.0) + 1;  // shifted law, same variance
  }
  CHECK(chi_square_poisson_pvalue(good, 4.0) > 0.01);
  CHECK(chi_square_poisson_pvalue(bad, 4.0) < 1e-6);
}

TEST_CASE("sample sets validate their invariants") {
  SampleSet nan_set;
  nan_set.values = {1.0, std::nan("")};
  CHECK_THROWS_AS(nan_set.validate(), std::domain_error);
  SampleSet mismatch;
  mismatch.values = {1.0, 2.0};
  mismatch.inner_stderr = {0.1};
  CHECK_THROWS_AS(mismatch.validate(), std::domain_error);
}

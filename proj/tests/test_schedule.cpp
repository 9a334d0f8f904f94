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

#include <cmath>

#include "polysim/schedule.hpp"

using namespace polysim;

TEST_CASE("lambda of beta") {
  CHECK(lambda_of_beta(0.0) == 0.0);
  CHECK(lambda_of_beta(1.0) ==
        doctest::Approx(1.718281828459045).epsilon(1e-14));
  CHECK(lambda_of_beta(-50.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lambda_of_beta(0.1) > lambda_of_beta(0.05));
}

TEST_CASE("fixed-nu-r family evaluation") {
  ScalingSchedule s{1.0, FixedNuR{1.0, 1.0}};
  const PolymerParams p = s.eval(1e4);
  CHECK(p.beta == doctest::Approx(std::log(1.1)).epsilon(1e-13));
  CHECK(p.nu == 1.0);
  CHECK(p.r == 1.0);
  // relation (a) holds with equality at every t
  for (double t : {3.0, 50.0, 1e4, 1e7}) {
    const PolymerParams q = s.eval(t);
    const double lam = q.lambda();
    const double ratio = q.nu * q.r * q.r * lam * lam * std::sqrt(t);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS((void)s.eval(0.0), std::domain_error);
  CHECK_THROWS_AS((void)s.eval(-3.0), std::domain_error);
}

TEST_CASE("fixed-beta family evaluation") {
  ScalingSchedule s{2.0, FixedBeta{1.0, 1.0}};
  const PolymerParams p = s.eval(100.0);
  // nu_t = (beta*)^2 t^{-1/2} / (r^2 lambda(beta0)^2)
  CHECK(p.nu == doctest::Approx(0.13547875493538636).epsilon(1e-12));
  CHECK(p.beta == 1.0);
  ScalingSchedule bad{1.0, FixedBeta{0.0, 1.0}};
  CHECK_THROWS_AS((void)bad.eval(10.0), std::domain_error);
}

TEST_CASE("gamma_t formula and family consistency") {
  ScalingSchedule s{1.0, FixedNuR{1.0, 1.0}};
  // lambda(beta_t) = t^{-1/4} makes gamma_t = t^{-3/4}
  CHECK(s.gamma(1e4) == doctest::Approx(1e-3).epsilon(1e-12));
  for (double t : {1e2, 1e4, 1e6}) {
    const PolymerParams p = s.eval(t);
    const double g = s.gamma(t);
    CHECK(std::fabs(p.nu * std::pow(t, 1.5) * g * g - 1.0) < 1e-12);
  }
  // lambda = 0 gives gamma = 0
  PolymerParams flat{0.0, 1.0, 1.0, 1.0};
  CHECK(gamma_t(flat, 1.0) == 0.0);
  CHECK_THROWS_AS((void)gamma_t(flat, 0.0), std::domain_error);
}

TEST_CASE("custom exponent family satisfies the relations asymptotically") {
  ScalingSchedule s{1.0,
                    CustomExponents{1.0, 0.375, 1.0, 0.25, 1.0, 0.0}};
  double prev_dev = 1e300, prev_b = 1e300, prev_c = 1e300;
  for (double t : {1e2, 1e4, 1e6, 1e8}) {
    const PolymerParams p = s.eval(t);
    const double lam = p.lambda();
    const double ratio = p.nu * p.r * p.r * lam * lam * std::sqrt(t);
    const double dev = std::fabs(ratio - 1.0);
    const double b = p.nu * p.r * p.r * p.r * lam * lam * lam;
    const double c = p.r / std::sqrt(t);
    CHECK(dev < prev_dev);
    CHECK(b < prev_b);
    CHECK(c < prev_c);
    prev_dev = dev;
    prev_b = b;
    prev_c = c;
  }
}

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

#include "polysim/brownian.hpp"
#include "polysim/environment.hpp"
#include "polysim/white_noise.hpp"

using namespace polysim;

namespace {

struct Moments {
  double mean, var, cov;
};

template <typename Sampler>
Moments two_point_moments(Sampler sampler, int n) {
  double m1 = 0.0, m2 = 0.0, s1 = 0.0, s2 = 0.0, cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = sampler();
    m1 += a;
    m2 += b;
    s1 += a * a;
    s2 += b * b;
    cross += a * b;
  }
  m1 /= n;
  m2 /= n;
  return {m1, s1 / n - m1 * m1, cross / n - m1 * m2};
}

}  // namespace

TEST_CASE("brownian sampling: empty and degenerate inputs") {
  RandomStream s(1, 0);
  const PathSample empty = sample_brownian_at({}, s);
  CHECK(empty.times.empty());
  CHECK(empty.values.empty());
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS((void)sample_brownian_at(bad, s), std::domain_error);
}

TEST_CASE("brownian variance and covariance oracles") {
  RandomStream s(5, 0);
  const int n = 100000;
  const std::vector<double> times{0.5, 1.0};
  const auto m = two_point_moments(
      [&] {
        const PathSample p = sample_brownian_at(times, s);
        return std::pair{p.values[0], p.values[1]};
      },
      n);
  // Var(B_1) = 1, Cov(B_0.5, B_1) = 0.5
  double v1 = 0.0;
  {
    RandomStream s2(6, 0);
    double acc = 0.0, acc2 = 0.0;
    const std::vector<double> one{1.0};
    for (int i = 0; i < n; ++i) {
      const double b = sample_brownian_at(one, s2).values[0];
      acc += b;
      acc2 += b * b;
    }
    v1 = acc2 / n - (acc / n) * (acc / n);
  }
  CHECK(std::fabs(v1 - 1.0) < 3.0 * std::sqrt(2.0 / n));
  CHECK(std::fabs(m.cov - 0.5) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("bridge law at one interior time") {
  RandomStream s(7, 0);
  const int n = 100000;
  const std::vector<double> times{0.5};

  double mean0 = 0.0, var0 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v =
        sample_bridge_at(times, SpaceTimePoint{1.0, 0.0}, s).values[0];
    mean0 += v;
    var0 += v * v;
  }
  mean0 /= n;
  var0 = var0 / n - mean0 * mean0;
  // bridge to (1, 0): mean 0, variance s(t-s)/t = 0.25
  CHECK(std::fabs(mean0) < 3.0 * std::sqrt(0.25 / n));
  CHECK(std::fabs(var0 - 0.25) < 3.0 * 0.25 * std::sqrt(2.0 / n));

  double mean2 = 0.0;
  for (int i = 0; i < n; ++i)
    mean2 += sample_bridge_at(times, SpaceTimePoint{1.0, 2.0}, s).values[0];
  mean2 /= n;
  // pinned at (1, 2): mean is the linear interpolation, 1 at time 0.5
  CHECK(std::fabs(mean2 - 1.0) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("bridge covariance at two interior times") {
  RandomStream s(8, 0);
  const int n = 200000;
  const std::vector<double> times{1.0, 3.0};
  const auto m = two_point_moments(
      [&] {
        const PathSample p =
            sample_bridge_at(times, SpaceTimePoint{4.0, 0.0}, s);
        return std::pair{p.values[0], p.values[1]};
      },
      n);
  // Cov(B_s, B_s') = s (t - s') / t = 1 * 1 / 4 = 0.25
  CHECK(std::fabs(m.cov - 0.25) < 4.0 * std::sqrt(2.0) * 0.75 / std::sqrt(n));
  // Var(B_1) = 1 * 3 / 4
  CHECK(std::fabs(m.var - 0.75) < 4.0 * 0.75 * std::sqrt(2.0 / n));
}

TEST_CASE("bridge rejects times outside (0, t)") {
  RandomStream s(9, 0);
  const std::vector<double> outside{1.5};
  CHECK_THROWS_AS(
      (void)sample_bridge_at(outside, SpaceTimePoint{1.0, 0.0}, s),
      std::domain_error);
}

TEST_CASE("poisson environment count and uniformity") {
  RandomStream s(10, 0);
  const SpaceTimeBox box{0.0, 3.0, 0.0, 1.0};  // area 3
  const double nu = 2.0;
  const int n = 10000;
  double mean = 0.0, var = 0.0, left_half = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto pts = sample_poisson_points(box, nu, s);
    mean += double(pts.size());
    var += double(pts.size()) * double(pts.size());
    for (const auto& p : pts) {
      CHECK(box.contains(p));
      if (p.s < 1.5) left_half += 1.0;
    }
    for (std::size_t j = 1; j < pts.size(); ++j)
      CHECK(pts[j - 1].s <= pts[j].s);
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::fabs(mean - 6.0) < 3.0 * std::sqrt(6.0 / n));
  CHECK(std::fabs(var - 6.0) < 3.0 * std::sqrt((2 * 36.0 + 6.0) / n));
  // Mecke identity with f the indicator of the left half of the box
  CHECK(std::fabs(left_half / n - 3.0) < 3.0 * std::sqrt(3.0 / n));
}

TEST_CASE("zero intensity gives the empty environment") {
  RandomStream s(11, 0);
  const SpaceTimeBox box{0.0, 1.0, -1.0, 1.0};
  CHECK(sample_poisson_points(box, 0.0, s).empty());
  CHECK_THROWS_AS((void)sample_poisson_points(box, -0.5, s),
                  std::domain_error);
}

TEST_CASE("white noise grid cell law and additivity") {
  RandomStream s(12, 0);
  const SpaceTimeBox box{0.0, 0.2, 0.0, 0.4};
  const double dt = 0.1, dx = 0.1;  // 2 x 4 cells, variance 0.01 each
  const int n = 50000;
  double var_cell = 0.0, cov = 0.0, var_union = 0.0;
  for (int i = 0; i < n; ++i) {
    const WhiteNoiseGrid grid(dt, dx, box, s);
    const double a = grid.cell(0, 0);
    const double b = grid.cell(1, 2);
    var_cell += a * a;
    cov += a * b;
    const double u = grid.mass({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    var_union += u * u;
  }
  var_cell /= n;
  cov /= n;
  var_union /= n;
  CHECK(std::fabs(var_cell - 0.01) < 3.0 * 0.01 * std::sqrt(2.0 / n));
  CHECK(std::fabs(cov) < 3.0 * 0.01 / std::sqrt(double(n)));
  CHECK(std::fabs(var_union - 0.04) < 3.0 * 0.04 * std::sqrt(2.0 / n));
}

TEST_CASE("white noise rejects bad steps") {
  RandomStream s(13, 0);
  const SpaceTimeBox box{0.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS((void)WhiteNoiseGrid(0.0, 0.1, box, s), std::domain_error);
}

TEST_CASE("environment shift keeps in-window points") {
  Environment env;
  env.box = {0.0, 2.0, -1.0, 1.0};
  env.intensity = 1.0;
  env.points = {{0.2, 0.5}, {0.8, -0.3}, {1.5, 0.1}};
  const Environment shifted = shift_environment(env, 0.5, 0.1, 1.0);
  REQUIRE(shifted.points.size() == 2);
  CHECK(shifted.points[0].s == doctest::Approx(0.3));
  CHECK(shifted.points[0].x == doctest::Approx(-0.4));
  CHECK(shifted.points[1].s == doctest::Approx(1.0));
}

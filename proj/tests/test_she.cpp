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

#include "polysim/heat_kernel.hpp"
#include "polysim/quadrature.hpp"
#include "polysim/she.hpp"
#include "polysim/stats.hpp"

using namespace polysim;

namespace {

// coarse grid for fast statistical checks
const SheGridSpec kCoarse{0.05 * 0.05 / 4.0, 0.05, 1.0, 6.0};

}  // namespace

TEST_CASE("grid spec enforces the stability constraint") {
  const SheGridSpec unstable{0.01, 0.1, 1.0, 6.0};
  CHECK_THROWS_AS(unstable.validate(), std::domain_error);
  SheGridSpec ok{0.0025, 0.1, 1.0, 6.0};
  ok.validate();
  CHECK(ok.nt() == 400);
  CHECK(ok.nx() == 121);
  CHECK(ok.x_of(ok.j_of(0.0)) == 0.0);
  CHECK(ok.x_of(ok.j_of(0.5)) == doctest::Approx(0.5));
}

TEST_CASE("zero-noise field reproduces the heat kernel") {
  SheGridSpec spec{1e-4, 0.02, 1.0, 6.0};
  StreamedNoise noise(spec.dt, spec.dx, spec.nx(), 1, 0);
  const SheSolution sol = solve_she_fd(0.0, spec, noise);
  double max_rel = 0.0;
  for (std::int64_t j = 0; j < spec.nx(); ++j) {
    const double x = spec.x_of(j);
    if (std::fabs(x) > 3.0) continue;
    const double exact = heat_kernel(1.0, x);
    max_rel = std::max(max_rel,
                       std::fabs(sol.final_slice[std::size_t(j)] - exact) /
                           exact);
  }
  CHECK(max_rel < 0.02);
  CHECK(p2l_Z(sol) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sol.negative_cell_fraction == 0.0);
}

TEST_CASE("field mean and mass over noise draws") {
  const int n = 200;
  std::vector<double> z0(n), mass(n);
  for (int i = 0; i < n; ++i) {
    StreamedNoise noise(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 2,
                        std::uint64_t(i));
    const SheSolution sol = solve_she_fd(1.0, kCoarse, noise);
    z0[std::size_t(i)] =
        sol.final_slice[static_cast<std::size_t>(kCoarse.j_of(0.0))];
    mass[std::size_t(i)] = p2l_Z(sol);
  }
  const EstimatorResult m0 = mean_stderr(z0);
  const double rho10 = heat_kernel(1.0, 0.0);
  CHECK(std::fabs(m0.value - rho10) < 3.0 * m0.stderr_ + 0.03 * rho10);
  const EstimatorResult mm = mean_stderr(mass);
  CHECK(std::fabs(mm.value - 1.0) < 3.0 * mm.stderr_ + 0.01);
}

TEST_CASE("adaptedness: zeroing future noise leaves the past intact") {
  SheGridSpec spec{0.0025, 0.1, 1.0, 4.0};
  RandomStream stream(3, 0);
  // the materialized grid must cover the solver's nx = 81 cell centers
  WhiteNoiseGrid grid(spec.dt, spec.dx, SpaceTimeBox{0.0, 1.0, -4.05, 4.05},
                      stream);
  const std::int64_t half = spec.nt() / 2;
  const SheSolution full =
      solve_she_fd(0.8, spec, grid, std::vector<std::int64_t>{half});
  WhiteNoiseGrid zeroed = grid;
  zeroed.zero_from_time(half);
  const SheSolution cut =
      solve_she_fd(0.8, spec, zeroed, std::vector<std::int64_t>{half});
  const auto& a = full.slice_at_step(half);
  const auto& b = cut.slice_at_step(half);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("picard orders: base case and geometric decay") {
  StreamedNoise noise(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 4, 0);
  const PicardSolution p0 = picard_solve(0.5, 0, kCoarse, noise);
  for (std::int64_t j = 0; j < kCoarse.nx(); ++j) {
    const double x = kCoarse.x_of(j);
    if (std::fabs(x) > 3.0) continue;
    CHECK(p0.final_slice[std::size_t(j)] ==
          doctest::Approx(heat_kernel(1.0, x)).epsilon(0.02));
  }
  // beta = 0: every higher order vanishes
  const PicardSolution z = picard_solve(0.0, 3, kCoarse, noise);
  for (std::size_t j = 0; j < z.final_slice.size(); ++j)
    CHECK(z.final_slice[j] == doctest::Approx(z.order_slices[0][j]));

  // order norms decay geometrically at beta = 0.5
  const PicardSolution p4 = picard_solve(0.5, 4, kCoarse, noise);
  std::vector<double> norms;
  for (const auto& slice : p4.order_slices) {
    double n2 = 0.0;
    for (double v : slice) n2 += v * v;
    norms.push_back(std::sqrt(n2 * kCoarse.dx));
  }
  for (std::size_t k = 1; k + 1 < norms.size(); ++k)
    CHECK(norms[k + 1] < 0.75 * norms[k]);
  CHECK_THROWS_AS((void)picard_solve(0.5, 9, kCoarse, noise),
                  std::domain_error);
}

TEST_CASE("picard sum approaches the explicit scheme on common noise") {
  StreamedNoise noise_a(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 5, 0);
  StreamedNoise noise_b(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 5, 0);
  const SheSolution fd = solve_she_fd(0.5, kCoarse, noise_a);
  const PicardSolution pc = picard_solve(0.5, 4, kCoarse, noise_b);
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t j = 0; j < fd.final_slice.size(); ++j) {
    const double d = fd.final_slice[j] - pc.final_slice[j];
    diff2 += d * d;
    ref2 += fd.final_slice[j] * fd.final_slice[j];
  }
  CHECK(std::sqrt(diff2 / ref2) < 0.05);
}

TEST_CASE("p2p restriction is bit-identical from the origin") {
  StreamedNoise noise_a(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 6, 0);
  StreamedNoise noise_b(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 6, 0);
  const SheSolution fd = solve_she_fd(0.7, kCoarse, noise_a);
  const double via_p2p = p2p_Z(0.7, SpaceTimePoint{0.0, 0.0},
                               SpaceTimePoint{1.0, 0.5}, kCoarse, noise_b);
  CHECK(via_p2p ==
        fd.final_slice[static_cast<std::size_t>(kCoarse.j_of(0.5))]);
  CHECK_THROWS_AS((void)p2p_Z(0.7, SpaceTimePoint{1.0, 0.0},
                              SpaceTimePoint{0.5, 0.0}, kCoarse, noise_b),
                  std::domain_error);
}

TEST_CASE("p2p mean over draws is the shifted heat kernel") {
  const SpaceTimePoint from{0.25, 0.5};
  const SpaceTimePoint to{1.0, 0.0};
  const int n = 200;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    StreamedNoise noise(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 7,
                        std::uint64_t(i));
    vals[std::size_t(i)] = p2p_Z(0.8, from, to, kCoarse, noise);
  }
  const EstimatorResult m = mean_stderr(vals);
  const double target = heat_kernel(to.s - from.s, to.x - from.x);
  CHECK(std::fabs(m.value - target) < 3.0 * m.stderr_ + 0.03 * target);
}

TEST_CASE("pairing against a test function") {
  StreamedNoise noise(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 8, 0);
  const SheSolution sol = solve_she_fd(0.0, kCoarse, noise);
  const auto phi = [](double x) { return std::exp(-x * x); };
  const double paired = test_against_phi(sol, phi);
  const double oracle = adaptive_simpson(
      [&](double x) { return heat_kernel(1.0, x) * phi(x); }, -6.0, 6.0,
      1e-10);
  CHECK(paired == doctest::Approx(oracle).epsilon(0.01));
  CHECK(test_against_phi(sol, [](double) { return 0.0; }) == 0.0);
}

TEST_CASE("second moment closed form") {
  CHECK(second_moment_closed_form(0.0) == 1.0);
  CHECK(second_moment_closed_form(1.0) ==
        doctest::Approx(1.9523604891825571).epsilon(1e-12));
  CHECK(second_moment_closed_form(0.5) ==
        doctest::Approx(1.1582735720912207).epsilon(1e-12));
  CHECK(second_moment_closed_form(2.0) ==
        doctest::Approx(108.94090438997797).epsilon(1e-10));
}

TEST_CASE("second moment of the point-to-line mass grows toward the series") {
  // beta = 0.5 on the coarse grid: discretization bias within 5% + 3 se
  const int n = 300;
  std::vector<double> p2l(n);
  for (int i = 0; i < n; ++i) {
    StreamedNoise noise(kCoarse.dt, kCoarse.dx, kCoarse.nx(), 9,
                        std::uint64_t(i));
    p2l[std::size_t(i)] = p2l_Z(solve_she_fd(0.5, kCoarse, noise));
  }
  SampleSet set;
  set.values = p2l;
  const double target = second_moment_closed_form(0.5);
  const MomentComparison m2 = moment_compare(set, target, 2);
  CHECK(std::fabs(m2.moment - target) < 3.0 * m2.stderr_ + 0.05 * target);
}

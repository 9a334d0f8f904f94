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

#include "polysim/she.hpp"

#include <algorithm>
#include <cmath>

#include "polysim/chaos.hpp"

namespace polysim {

std::int64_t SheGridSpec::nt() const {
  return std::int64_t(std::llround(t_max / dt));
}

std::int64_t SheGridSpec::nx() const {
  return 2 * std::int64_t(std::llround(x_max / dx)) + 1;
}

double SheGridSpec::x_of(std::int64_t j) const {
  return double(j - (nx() - 1) / 2) * dx;
}

std::int64_t SheGridSpec::j_of(double x) const {
  return std::int64_t(std::llround(x / dx)) + (nx() - 1) / 2;
}

void SheGridSpec::validate() const {
  if (!(dt > 0.0) || !(dx > 0.0) || !(t_max > 0.0) || !(x_max > 0.0))
    throw std::domain_error("SheGridSpec: all sizes must be positive");
  if (dt > 0.5 * dx * dx + 1e-15 * dx * dx)
    throw std::domain_error("SheGridSpec: stability requires dt <= dx^2/2");
}

const std::vector<double>& SheSolution::slice_at_step(std::int64_t step) const {
  for (std::size_t i = 0; i < snapshot_steps.size(); ++i)
    if (snapshot_steps[i] == step) return snapshots[i];
  if (step == spec.nt()) return final_slice;
  throw std::domain_error("SheSolution: no snapshot stored at that step");
}

namespace {

// One explicit step of the deterministic part: u + dt/2 * Lap u with
// absorbing boundary (cells outside the window stay zero).
inline void heat_step(const std::vector<double>& u, std::vector<double>& out,
                      double c) {
  const std::size_t n = u.size();
  out[0] = u[0] + c * (u[1] - 2.0 * u[0]);
  for (std::size_t j = 1; j + 1 < n; ++j)
    out[j] = u[j] + c * (u[j + 1] - 2.0 * u[j] + u[j - 1]);
  out[n - 1] = u[n - 1] + c * (u[n - 2] - 2.0 * u[n - 1]);
}

}  // namespace

SheSolution solve_she_fd(double beta, const SheGridSpec& spec,
                         const NoiseField& noise,
                         const std::vector<std::int64_t>& snapshot_steps) {
  spec.validate();
  if (noise.dt() != spec.dt || noise.dx() != spec.dx)
    throw std::domain_error("solve_she_fd: noise grid does not match");
  const std::int64_t nt = spec.nt(), nx = spec.nx();
  SheSolution sol;
  sol.spec = spec;
  sol.beta = beta;
  std::vector<double> z(static_cast<std::size_t>(nx), 0.0);
  std::vector<double> znew(static_cast<std::size_t>(nx));
  z[static_cast<std::size_t>(spec.j_of(0.0))] = 1.0 / spec.dx;
  const double c = 0.5 * spec.dt / (spec.dx * spec.dx);
  const double noise_scale = beta / spec.dx;
  std::int64_t negatives = 0;
  for (std::int64_t i = 0; i < nt; ++i) {
    heat_step(z, znew, c);
    if (beta != 0.0) {
      for (std::int64_t j = 0; j < nx; ++j)
        znew[static_cast<std::size_t>(j)] +=
            noise_scale * z[static_cast<std::size_t>(j)] * noise.cell(i, j);
    }
    std::swap(z, znew);
    for (double v : z)
      if (v < 0.0) ++negatives;
    for (std::int64_t snap : snapshot_steps) {
      if (snap == i + 1) {
        sol.snapshot_steps.push_back(snap);
        sol.snapshots.push_back(z);
      }
    }
  }
  sol.negative_cell_fraction =
      double(negatives) / (double(nt) * double(nx));
  if (sol.negative_cell_fraction > 1e-3)
    throw std::runtime_error(
        "solve_she_fd: more than 0.1% negative cells; refine the grid");
  sol.final_slice = std::move(z);
  return sol;
}

PicardSolution picard_solve(double beta, int order, const SheGridSpec& spec,
                            const NoiseField& noise) {
  spec.validate();
  if (order < 0 || order > 6)
    throw std::domain_error("picard_solve: order must be in [0, 6]");
  if (noise.dt() != spec.dt || noise.dx() != spec.dx)
    throw std::domain_error("picard_solve: noise grid does not match");
  const std::int64_t nt = spec.nt(), nx = spec.nx();
  const double c = 0.5 * spec.dt / (spec.dx * spec.dx);
  const double noise_scale = beta / spec.dx;
  // March all orders jointly: V^0 is the discrete heat flow from the delta,
  // and V^k picks up the noise applied to V^{k-1}:
  //   V^k_{i+1} = V^k_i + dt/2 Lap V^k_i + beta V^{k-1}_i W_i / dx.
  std::vector<std::vector<double>> v(
      static_cast<std::size_t>(order) + 1, std::vector<double>(static_cast<std::size_t>(nx), 0.0));
  std::vector<std::vector<double>> vnew = v;
  v[0][static_cast<std::size_t>(spec.j_of(0.0))] = 1.0 / spec.dx;
  for (std::int64_t i = 0; i < nt; ++i) {
    for (int k = 0; k <= order; ++k) {
      heat_step(v[static_cast<std::size_t>(k)], vnew[static_cast<std::size_t>(k)], c);
      if (k > 0 && beta != 0.0) {
        const auto& lower = v[static_cast<std::size_t>(k - 1)];
        auto& cur = vnew[static_cast<std::size_t>(k)];
        for (std::int64_t j = 0; j < nx; ++j)
          cur[static_cast<std::size_t>(j)] +=
              noise_scale * lower[static_cast<std::size_t>(j)] * noise.cell(i, j);
      }
    }
    std::swap(v, vnew);
  }
  PicardSolution sol;
  sol.spec = spec;
  sol.beta = beta;
  sol.order = order;
  sol.order_slices = std::move(v);
  sol.final_slice.assign(static_cast<std::size_t>(nx), 0.0);
  for (const auto& slice : sol.order_slices)
    for (std::int64_t j = 0; j < nx; ++j)
      sol.final_slice[static_cast<std::size_t>(j)] += slice[static_cast<std::size_t>(j)];
  return sol;
}

double p2l_Z(const SheSolution& solution) {
  if (solution.spec.t_max < 1.0)
    throw std::domain_error("p2l_Z: domain must reach T = 1");
  double sum = 0.0;
  for (double v : solution.final_slice) sum += v;
  return sum * solution.spec.dx;
}

double p2p_Z(double beta, const SpaceTimePoint& from, const SpaceTimePoint& to,
             const SheGridSpec& spec, const NoiseField& noise) {
  spec.validate();
  if (!(from.s < to.s)) throw std::domain_error("p2p_Z: need S < T");
  if (noise.dt() != spec.dt || noise.dx() != spec.dx)
    throw std::domain_error("p2p_Z: noise grid does not match");
  const std::int64_t i_from = std::int64_t(std::llround(from.s / spec.dt));
  const std::int64_t i_to = std::int64_t(std::llround(to.s / spec.dt));
  const std::int64_t nx = spec.nx();
  const std::int64_t j_from = spec.j_of(from.x);
  const std::int64_t j_to = spec.j_of(to.x);
  if (j_from < 0 || j_from >= nx || j_to < 0 || j_to >= nx)
    throw std::domain_error("p2p_Z: endpoints outside the spatial window");
  std::vector<double> z(static_cast<std::size_t>(nx), 0.0);
  std::vector<double> znew(static_cast<std::size_t>(nx));
  z[static_cast<std::size_t>(j_from)] = 1.0 / spec.dx;
  const double c = 0.5 * spec.dt / (spec.dx * spec.dx);
  const double noise_scale = beta / spec.dx;
  for (std::int64_t i = i_from; i < i_to; ++i) {
    heat_step(z, znew, c);
    if (beta != 0.0) {
      for (std::int64_t j = 0; j < nx; ++j)
        znew[static_cast<std::size_t>(j)] +=
            noise_scale * z[static_cast<std::size_t>(j)] * noise.cell(i, j);
    }
    std::swap(z, znew);
  }
  return z[static_cast<std::size_t>(j_to)];
}

double test_against_phi(const SheSolution& solution,
                        const std::function<double(double)>& phi) {
  const auto& spec = solution.spec;
  double sum = 0.0;
  for (std::int64_t j = 0; j < spec.nx(); ++j)
    sum += solution.final_slice[static_cast<std::size_t>(j)] * phi(spec.x_of(j));
  return sum * spec.dx;
}

double second_moment_closed_form(double beta) {
  int order = 8;
  for (;;) {
    const FockNorm norm = fock_norm_rho(beta, order);
    if (norm.tail_bound < 1e-12) return norm.partial_sum;
    order *= 2;
    if (order > 1 << 14)
      throw ToleranceError("second_moment_closed_form: series too slow",
                           norm.tail_bound);
  }
}

}  // namespace polysim

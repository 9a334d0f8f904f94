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

#ifndef POLYSIM_SHE_HPP
#define POLYSIM_SHE_HPP

#include <functional>
#include <vector>

#include "polysim/types.hpp"
#include "polysim/white_noise.hpp"

namespace polysim {

/// Discretization of [0, T_max] x [-X_max, X_max]; forward Euler needs
/// dt <= dx^2 / 2, enforced at construction.
struct SheGridSpec {
  double dt = 1e-4;
  double dx = 0.02;
  double t_max = 1.0;
  double x_max = 6.0;

  std::int64_t nt() const;
  std::int64_t nx() const;  // number of cells; grid points are cell centers
  double x_of(std::int64_t j) const;
  std::int64_t j_of(double x) const;
  void validate() const;
};

/// Multiplicative-noise heat field: one solve of
///   dZ = 1/2 Laplacian Z dT + beta Z dW
/// with discrete delta initial data Z(0, x) = 1{x=0}/dx.  Stores the
/// requested time slices (always the final one).
struct SheSolution {
  SheGridSpec spec;
  double beta = 0.0;
  std::vector<double> final_slice;           // Z(t_max, .)
  std::vector<std::int64_t> snapshot_steps;  // extra stored time indices
  std::vector<std::vector<double>> snapshots;
  double negative_cell_fraction = 0.0;

  const std::vector<double>& slice_at_step(std::int64_t step) const;
};

/// Explicit scheme: Z' = Z + dt/2 Lap Z + beta Z W/dx per cell.  Aborts
/// (std::runtime_error) if more than 0.1% of cells go negative, which marks
/// the discretization artifact region.
SheSolution solve_she_fd(double beta, const SheGridSpec& spec,
                         const NoiseField& noise,
                         const std::vector<std::int64_t>& snapshot_steps = {});

/// K-fold Picard iteration of the mild form started from the heat kernel;
/// order k of the iteration is the k-th discrete chaos term, and the sum
/// converges to the explicit scheme as K grows (same noise, same grid).
struct PicardSolution {
  SheGridSpec spec;
  double beta = 0.0;
  int order = 0;
  std::vector<double> final_slice;                 // sum of orders 0..K
  std::vector<std::vector<double>> order_slices;   // each order at t_max
};
PicardSolution picard_solve(double beta, int order, const SheGridSpec& spec,
                            const NoiseField& noise);

/// Point-to-line mass at the final time: Riemann sum of Z(T_max, .).
double p2l_Z(const SheSolution& solution);

/// Point-to-point value: delta data released at (S, Y), field read at (T, X);
/// (S, Y) = (0, 0) reproduces the full solve bit for bit on the same noise.
double p2p_Z(double beta, const SpaceTimePoint& from, const SpaceTimePoint& to,
             const SheGridSpec& spec, const NoiseField& noise);

/// Riemann pairing of the final slice with a test function.
double test_against_phi(const SheSolution& solution,
                        const std::function<double(double)>& phi);

/// E[Z_beta^2] for the point-to-line partition function, by the Fock-space
/// isometry: sum_k beta^{2k} 2^{-k}/Gamma(k/2+1), summed to tail < 1e-12.
double second_moment_closed_form(double beta);

}  // namespace polysim

#endif  // POLYSIM_SHE_HPP

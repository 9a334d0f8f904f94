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

#ifndef POLYSIM_CHAOS_HPP
#define POLYSIM_CHAOS_HPP

#include <functional>
#include <span>
#include <vector>

#include "polysim/environment.hpp"
#include "polysim/polymer.hpp"
#include "polysim/schedule.hpp"
#include "polysim/types.hpp"

namespace polysim {

using KernelFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

/// A k-point kernel on the open simplex 0 < s_1 < ... < s_k <= horizon
/// paired with k real positions.  eval throws outside the simplex; the
/// extension by zero is implicit in all integrals.
struct SimplexKernel {
  int arity = 0;
  double horizon = 1.0;
  KernelFn eval;
  std::function<double()> l2_norm_sq;  // exact where known, MC otherwise
};

/// Element of the Fock space: one simplex kernel per order (order 0 is a
/// scalar), truncated at K = kernels.size().
struct FockElement {
  double scalar = 1.0;
  std::vector<SimplexKernel> kernels;
  double norm_sq() const;
};

/// Average of g over simultaneous permutations of the (s_i, x_i) pairs.
KernelFn symmetrize(const KernelFn& g, int k);

/// P[B_{s_i} in [x_i - w, x_i + w] for all i], s strictly increasing > 0,
/// via the Markov factorization and a nested Gauss-Legendre rule per box.
double brownian_box_probability(std::span<const double> s,
                                std::span<const double> x, double half_width,
                                int gl_order = 16);

/// k-step Brownian transition density on the unit-horizon simplex, with the
/// exact norm ||rho^k||^2 = 2^{-k} / Gamma(k/2 + 1).
SimplexKernel rho_k_kernel(int k);
double rho_k_norm_sq(int k);

/// Expected k-fold difference kernel of W_t:
///   T_k W_t(s, x) = lambda(beta)^k P[prod_i chi^r_{s_i, x_i}(B)].
SimplexKernel T_k_W_kernel(const PolymerParams& params, int k,
                           int gl_order = 16);

/// Rescaled kernel phi_t^k on the unit simplex:
///   gamma_t^{-k} lambda^k P[prod chi^{r_t/sqrt(t)}_{s_i, x_i}(B)];
/// satisfies gamma_t^k phi_t^k(s/t, x/sqrt(t)) = T_k W_t(s, x).
SimplexKernel phi_t_kernel(const ScalingSchedule& schedule, double t, int k,
                           int gl_order = 16);

/// Sum of g over ordered k-tuples of pairwise distinct environment points.
double factorial_measure_sum(const Environment& env, int k, const KernelFn& g,
                             int max_order = 4);

/// Lebesgue-part controls for the inclusion-exclusion integral.
struct QuadratureSpec {
  double x_lo = -6.0;
  double x_hi = 6.0;
  int gauss_points = 48;            // one integrated pair: product Gauss
  std::int64_t qmc_nodes = 100000;  // two or more pairs: Halton
  double tolerance = 0.0;           // > 0: certify QMC batch spread below this
};

/// Multiple Wiener-Ito integral by inclusion-exclusion over subsets J of
/// coordinates: point sums over J, nu-weighted Lebesgue integrals over the
/// complement, signs (-1)^{k-|J|}.
double wiener_ito_integral(const Environment& env, double nu, int k,
                           const KernelFn& g, const QuadratureSpec& spec,
                           int max_order = 4);

/// Product-of-box-indicator kernels; all integrals are exact areas, used by
/// the covariance checks.
struct BoxProductKernel {
  std::vector<SpaceTimeBox> boxes;
  int arity() const { return int(boxes.size()); }
};

double box_wiener_ito(const Environment& env, double nu,
                      const BoxProductKernel& g);
double box_sym_inner_product(const BoxProductKernel& g,
                             const BoxProductKernel& h);

struct CovarianceCheck {
  double empirical = 0.0;
  double stderr_ = 0.0;
  double theoretical = 0.0;
};

/// Empirical covariance of two Wiener-Ito integrals over fresh environments
/// against delta_{k,l} k! nu^k <Sym g, Sym h>.
CovarianceCheck covariance_check(double nu, const BoxProductKernel& g,
                                 const BoxProductKernel& h,
                                 std::int64_t n_envs,
                                 const SpaceTimeBox& env_box,
                                 std::uint64_t seed, int threads);

struct ChaosResult {
  double value = 0.0;
  double tail_l2 = 0.0;            // L2 bound on the dropped orders
  std::vector<double> per_order;   // term k = (1/k!) bar-omega^(k)(T_k W_t)
};

/// Chaos reconstruction sum_{k<=K} (1/k!) bar-omega_t^(k)(T_k W_t).
///
/// The Lebesgue parts are exact here: integrating any coordinate of T_k W_t
/// over [0,t] x R contributes the factor lambda r t (the tube slice has
/// width r for every path), which collapses the inclusion-exclusion to a
/// binomial sum over point tuples.
ChaosResult chaos_reconstruct_W(const Environment& env,
                                const PolymerParams& params, int K,
                                int gl_order = 16, int max_order = 4);

/// L2 bound on the chaos orders beyond K, from the kernel domination
/// ||T_k W||^2_simplex <= (nu lambda^2 r^2)^k (t/2)^{k/2} / Gamma(k/2+1).
double chaos_tail_l2_bound(const PolymerParams& params, int K);

struct FockNorm {
  double partial_sum = 0.0;
  double tail_bound = 0.0;
};

/// Partial sum of ||R(beta)||^2 = sum_k beta^{2k} 2^{-k} / Gamma(k/2+1)
/// with a rigorous remainder bound.
FockNorm fock_norm_rho(double beta, int K);

/// Monte Carlo L2 norm of a simplex function, importance-sampled from
/// Dirichlet(1/2,...,1/2,1) time increments and the Brownian chain in space
/// (finite variance for kernels dominated by a multiple of rho^k).
EstimatorResult simplex_function_l2_mc(int arity, double horizon,
                                       const KernelFn& f,
                                       std::int64_t n_samples,
                                       RandomStream& stream);

}  // namespace polysim

#endif  // POLYSIM_CHAOS_HPP

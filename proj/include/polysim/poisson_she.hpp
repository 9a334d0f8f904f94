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

#ifndef POLYSIM_POISSON_SHE_HPP
#define POLYSIM_POISSON_SHE_HPP

#include <functional>

#include "polysim/polymer.hpp"

namespace polysim {

/// Smooth compactly supported test function with its second derivative.
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> second_derivative;
  double support_radius = 1.0;
};

/// The classic bump exp(1 - 1/(1 - (x/a)^2)) on (-a, a), zero outside,
/// scaled to amplitude at the origin.
TestFunction bump_test_function(double a, double amplitude = 1.0);

struct SheResidualOptions {
  std::int64_t n_paths = 20000;  // bridge paths per quadrature node
  int x_intervals = 64;          // Simpson intervals over the support
  int s_nodes = 192;             // time nodes distributed over jump segments
  double quad_allowance = 1e-5;  // declared deterministic quadrature budget
};

struct SheResidualResult {
  double residual = 0.0;
  double mc_stderr = 0.0;        // propagated Monte Carlo standard error
  double error_budget = 0.0;     // 3 * mc_stderr + quadrature allowance
  double lhs = 0.0;              // int W(t,x) phi(x) dx
  double heat_term = 0.0;        // (1/2) int_0^t int W(s,x) phi''(x) dx ds
  double noise_term = 0.0;       // compensated-measure term
};

/// Weak-form balance of the point-to-point field against a test function:
///   int W(t,x) phi dx = phi(0) + 1/2 int_0^t int W(s,x) phi'' dx ds
///     + lambda int dx phi(x) int bar-omega(ds dy) W(s-,x) 1{|y-x|<=r/2},
/// with every W estimated by bridge Monte Carlo on the same environment and
/// the compensator evaluated as nu r int_0^t int W(s,x) phi dx ds.
SheResidualResult verify_poisson_she(const Environment& env,
                                     const PolymerParams& params,
                                     const TestFunction& phi,
                                     const SheResidualOptions& opts,
                                     RandomStream& stream);

}  // namespace polysim

#endif  // POLYSIM_POISSON_SHE_HPP

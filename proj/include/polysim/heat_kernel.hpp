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

#ifndef POLYSIM_HEAT_KERNEL_HPP
#define POLYSIM_HEAT_KERNEL_HPP

#include <optional>
#include <span>

#include "polysim/types.hpp"

namespace polysim {

/// Gaussian transition density exp(-x^2/(2s)) / sqrt(2 pi s), s > 0.
double heat_kernel(double s, double x);

/// Chain density along increasing times: product of heat_kernel increments
/// starting from (0, 0); with an endpoint (T, X) the trailing factor
/// heat_kernel(T - s_k, X - x_k) is appended.  k = 0 returns 1 (no endpoint)
/// or heat_kernel(T, X).
double heat_kernel_chain(std::span<const double> times,
                         std::span<const double> positions,
                         std::optional<SpaceTimePoint> endpoint = {});

/// Integral of prod_j (s_j - s_{j-1})^{-1/2} over the unit k-simplex:
/// pi^{k/2} / Gamma(k/2 + 1).
double dirichlet_simplex_constant(int k);

}  // namespace polysim

#endif  // POLYSIM_HEAT_KERNEL_HPP

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

#include "polysim/heat_kernel.hpp"

#include <cmath>

namespace polysim {

double heat_kernel(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("heat_kernel: s must be > 0");
  static const double inv_sqrt_2pi = 0.39894228040143267793994605993438;
  return inv_sqrt_2pi / std::sqrt(s) * std::exp(-x * x / (2.0 * s));
}

double heat_kernel_chain(std::span<const double> times,
                         std::span<const double> positions,
                         std::optional<SpaceTimePoint> endpoint) {
  if (times.size() != positions.size())
    throw std::domain_error("heat_kernel_chain: length mismatch");
  double s_prev = 0.0, x_prev = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > s_prev))
      throw std::domain_error("heat_kernel_chain: times must be increasing, > 0");
    prod *= heat_kernel(times[i] - s_prev, positions[i] - x_prev);
    s_prev = times[i];
    x_prev = positions[i];
  }
  if (endpoint) {
    if (!(endpoint->s > s_prev))
      throw std::domain_error("heat_kernel_chain: endpoint before last time");
    prod *= heat_kernel(endpoint->s - s_prev, endpoint->x - x_prev);
  }
  return prod;
}

double dirichlet_simplex_constant(int k) {
  if (k < 1)
    throw std::domain_error("dirichlet_simplex_constant: k must be >= 1");
  static const double pi = 3.14159265358979323846;
  return std::pow(pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

}  // namespace polysim

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

#ifndef POLYSIM_SCHEDULE_HPP
#define POLYSIM_SCHEDULE_HPP

#include <variant>

#include "polysim/polymer.hpp"

namespace polysim {

/// exp(beta) - 1: the exponential-moment correction of a unit Poisson mass.
double lambda_of_beta(double beta);

/// Parameter families (beta_t, nu_t, r_t) driving the intermediate-disorder
/// limit.  Each built-in family satisfies
///   nu_t r_t^2 lambda(beta_t)^2 = (beta*)^2 t^{-1/2}
/// with equality, and the companion decay conditions asymptotically.
struct FixedNuR {
  double nu0 = 1.0;
  double r0 = 1.0;
};
struct FixedBeta {
  double beta0 = 1.0;
  double r0 = 1.0;
};
/// Free-form power laws beta_t = c_b t^{-p_b}, nu_t = c_n t^{p_n},
/// r_t = c_r t^{p_r}; the driving relation then holds only asymptotically.
struct CustomExponents {
  double c_beta = 1.0, p_beta = 0.25;
  double c_nu = 1.0, p_nu = 0.0;
  double c_r = 1.0, p_r = 0.0;
};

struct ScalingSchedule {
  double beta_star = 1.0;
  std::variant<FixedNuR, FixedBeta, CustomExponents> family = FixedNuR{};

  /// Evaluated triple (beta_t, nu_t, r_t) at horizon t (as PolymerParams).
  PolymerParams eval(double t) const;

  /// gamma_t = (beta*)^{-3} nu_t r_t^3 lambda(beta_t)^3, the vanishing
  /// parameter of the regime.
  double gamma(double t) const;
};

/// gamma for an explicit parameter triple.
double gamma_t(const PolymerParams& params, double beta_star);

}  // namespace polysim

#endif  // POLYSIM_SCHEDULE_HPP

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

#include "polysim/schedule.hpp"

#include <cmath>

namespace polysim {

double lambda_of_beta(double beta) { return std::expm1(beta); }

PolymerParams ScalingSchedule::eval(double t) const {
  if (!(t > 0.0)) throw std::domain_error("ScalingSchedule: t must be > 0");
  PolymerParams p;
  p.t = t;
  if (const auto* f = std::get_if<FixedNuR>(&family)) {
    // Solve nu0 r0^2 lambda^2 = (beta*)^2 / sqrt(t) for lambda, invert.
    const double lam =
        beta_star * std::pow(t, -0.25) / (f->r0 * std::sqrt(f->nu0));
    p.beta = std::log1p(lam);
    p.nu = f->nu0;
    p.r = f->r0;
  } else if (const auto* f = std::get_if<FixedBeta>(&family)) {
    const double lam = lambda_of_beta(f->beta0);
    if (lam == 0.0)
      throw std::domain_error("ScalingSchedule: fixed-beta needs lambda != 0");
    p.beta = f->beta0;
    p.nu = beta_star * beta_star / (std::sqrt(t) * f->r0 * f->r0 * lam * lam);
    p.r = f->r0;
  } else {
    const auto& c = std::get<CustomExponents>(family);
    p.beta = c.c_beta * std::pow(t, -c.p_beta);
    p.nu = c.c_nu * std::pow(t, c.p_nu);
    p.r = c.c_r * std::pow(t, c.p_r);
  }
  p.validate();
  return p;
}

double ScalingSchedule::gamma(double t) const {
  return gamma_t(eval(t), beta_star);
}

double gamma_t(const PolymerParams& params, double beta_star) {
  if (beta_star == 0.0) throw std::domain_error("gamma_t: beta* must be != 0");
  const double lam = params.lambda();
  return params.nu * params.r * params.r * params.r * lam * lam * lam /
         (beta_star * beta_star * beta_star);
}

}  // namespace polysim

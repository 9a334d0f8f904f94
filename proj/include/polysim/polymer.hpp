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

#ifndef POLYSIM_POLYMER_HPP
#define POLYSIM_POLYMER_HPP

#include <cstdint>

#include "polysim/brownian.hpp"
#include "polysim/environment.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// Model parameters: inverse temperature, environment intensity, tube width
/// and time horizon (dimension is fixed to 1, the tube is the interval of
/// length r centered on the path).
struct PolymerParams {
  double beta = 1.0;
  double nu = 1.0;
  double r = 1.0;
  double t = 1.0;

  double lambda() const;
  void validate() const {
    if (!(nu >= 0.0)) throw std::domain_error("PolymerParams: nu must be >= 0");
    if (!(r > 0.0)) throw std::domain_error("PolymerParams: r must be > 0");
    if (!(t > 0.0)) throw std::domain_error("PolymerParams: t must be > 0");
  }
};

/// Spatial truncation window for path-to-line simulations: paths exit
/// |x| <= c sqrt(t) + r with probability below 1e-8 at c = 6.
SpaceTimeBox standard_box(const PolymerParams& params, double c = 6.0);

Environment sample_standard_environment(const PolymerParams& params,
                                        RandomStream& stream, double c = 6.0);

/// Number of environment points within r/2 of the path at the points' times
/// (closed inequality).  The path must be sampled exactly at the times of
/// env.points restricted to (0, t].
std::int64_t tube_energy(const PathSample& path, const Environment& env,
                         double r);

struct PathBudget {
  std::int64_t n_paths = 10000;
  bool antithetic = true;
};

/// Inner Monte Carlo estimate of Z_t = P[exp(beta * energy)] for one fixed
/// environment, with antithetic Gaussian increments by default.
EstimatorResult partition_Z(const Environment& env, const PolymerParams& p,
                            std::int64_t n_paths, RandomStream& stream,
                            bool antithetic = true);

/// W_t = exp(-lambda nu r t) Z_t; grand mean over environments is one.
EstimatorResult renormalized_W(const Environment& env, const PolymerParams& p,
                               std::int64_t n_paths, RandomStream& stream,
                               bool antithetic = true);

/// Normalized point-to-point partition function
///   W(t,x) = rho(t,x) P^{t,x}_{0,0}[exp(beta * energy - lambda nu r t)],
/// estimated with bridge sampling at the environment's point times.
EstimatorResult p2p_W(const Environment& env, const PolymerParams& p,
                      const SpaceTimePoint& endpoint, std::int64_t n_paths,
                      RandomStream& stream, bool antithetic = true);

/// W(s,y; t,x) via the environment shifted by (-s,-y); from = (0,0)
/// reproduces p2p_W bit for bit on the same stream.
EstimatorResult shifted_p2p_W(const Environment& env, const PolymerParams& p,
                              const SpaceTimePoint& from,
                              const SpaceTimePoint& to, std::int64_t n_paths,
                              RandomStream& stream, bool antithetic = true);

}  // namespace polysim

#endif  // POLYSIM_POLYMER_HPP

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

#ifndef POLYSIM_ENVIRONMENT_HPP
#define POLYSIM_ENVIRONMENT_HPP

#include <vector>

#include "polysim/rng.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// A finite realization of the Poisson point process on a space-time box,
/// points sorted by time.  Immutable after creation.
struct Environment {
  std::vector<SpaceTimePoint> points;
  SpaceTimeBox box;
  double intensity = 0.0;

  std::vector<double> point_times() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.s);
    return out;
  }
};

/// Homogeneous Poisson sample on the box: count ~ Poisson(nu * area),
/// positions i.i.d. uniform given the count.  Result is sorted by time.
std::vector<SpaceTimePoint> sample_poisson_points(const SpaceTimeBox& box,
                                                  double intensity,
                                                  RandomStream& stream);

Environment sample_environment(const SpaceTimeBox& box, double intensity,
                               RandomStream& stream);

/// Environment translated by (-s, -y), keeping points with shifted time in
/// (0, t_new]; the box time interval is reset to start at 0.
Environment shift_environment(const Environment& env, double s, double y,
                              double t_new);

}  // namespace polysim

#endif  // POLYSIM_ENVIRONMENT_HPP

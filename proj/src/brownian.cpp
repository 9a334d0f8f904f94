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

#include "polysim/brownian.hpp"

#include <cmath>

namespace polysim {

PathSample sample_brownian_at(std::span<const double> times,
                              RandomStream& stream) {
  double prev = -1.0;
  for (double t : times) {
    if (!(t >= 0.0) || (prev >= 0.0 && !(t > prev)))
      throw std::domain_error(
          "sample_brownian_at: times must be >= 0 and strictly increasing");
    prev = t;
  }
  PathSample path;
  path.times.assign(times.begin(), times.end());
  path.values.resize(times.size());
  double s_prev = 0.0, b = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double ds = times[i] - s_prev;
    if (ds > 0.0) b += std::sqrt(ds) * stream.normal();
    path.values[i] = b;
    s_prev = times[i];
  }
  return path;
}

PathSample sample_bridge_at(std::span<const double> times,
                            const SpaceTimePoint& endpoint,
                            RandomStream& stream) {
  if (!(endpoint.s > 0.0))
    throw std::domain_error("sample_bridge_at: endpoint time must be > 0");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) || !(t < endpoint.s))
      throw std::domain_error("sample_bridge_at: times must lie in (0, t)");
    prev = t;
  }
  PathSample path;
  path.times.assign(times.begin(), times.end());
  path.values.resize(times.size());
  path.pin = endpoint;
  // Sequential conditioning: given B at s_prev and the pin, the next value
  // is Gaussian with mean interpolated toward the pin and variance
  // ds * (t - s_i) / (t - s_prev).
  double s_prev = 0.0, b = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double ds = times[i] - s_prev;
    const double rem = endpoint.s - s_prev;
    const double mean = b + ds / rem * (endpoint.x - b);
    const double var = ds * (endpoint.s - times[i]) / rem;
    b = mean + std::sqrt(var) * stream.normal();
    path.values[i] = b;
    s_prev = times[i];
  }
  return path;
}

}  // namespace polysim

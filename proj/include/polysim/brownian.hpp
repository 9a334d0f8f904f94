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

#ifndef POLYSIM_BROWNIAN_HPP
#define POLYSIM_BROWNIAN_HPP

#include <optional>
#include <span>
#include <vector>

#include "polysim/rng.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// A path observed at a finite strictly increasing set of times.  Values are
/// exact samples of the law at those times; no grid, no interpolation.
struct PathSample {
  std::vector<double> times;
  std::vector<double> values;
  SpaceTimePoint start{0.0, 0.0};
  std::optional<SpaceTimePoint> pin;  // bridge endpoint, when conditioned
};

/// Standard Brownian motion from (0,0) sampled exactly at the given times
/// (Gaussian increments over the sorted time set).
PathSample sample_brownian_at(std::span<const double> times,
                              RandomStream& stream);

/// Brownian bridge (0,0) -> endpoint, sampled exactly at times strictly
/// inside (0, endpoint.s) via sequential conditioning.
PathSample sample_bridge_at(std::span<const double> times,
                            const SpaceTimePoint& endpoint,
                            RandomStream& stream);

}  // namespace polysim

#endif  // POLYSIM_BROWNIAN_HPP

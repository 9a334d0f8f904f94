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

#include "polysim/environment.hpp"

#include <algorithm>

namespace polysim {

std::vector<SpaceTimePoint> sample_poisson_points(const SpaceTimeBox& box,
                                                  double intensity,
                                                  RandomStream& stream) {
  box.validate();
  if (!(intensity >= 0.0))
    throw std::domain_error("sample_poisson_points: intensity must be >= 0");
  const std::int64_t n = stream.poisson(intensity * box.area());
  std::vector<SpaceTimePoint> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.s = stream.uniform(box.t_min, box.t_max);
    p.x = stream.uniform(box.x_min, box.x_max);
  }
  std::sort(pts.begin(), pts.end(),
            [](const SpaceTimePoint& a, const SpaceTimePoint& b) {
              return a.s < b.s;
            });
  return pts;
}

Environment sample_environment(const SpaceTimeBox& box, double intensity,
                               RandomStream& stream) {
  Environment env;
  env.box = box;
  env.intensity = intensity;
  env.points = sample_poisson_points(box, intensity, stream);
  return env;
}

Environment shift_environment(const Environment& env, double s, double y,
                              double t_new) {
  Environment out;
  out.intensity = env.intensity;
  out.box = SpaceTimeBox{0.0, t_new, env.box.x_min - y, env.box.x_max - y};
  out.points.reserve(env.points.size());
  for (const auto& p : env.points) {
    const double ts = p.s - s;
    if (ts > 0.0 && ts <= t_new) out.points.push_back({ts, p.x - y});
  }
  return out;
}

}  // namespace polysim

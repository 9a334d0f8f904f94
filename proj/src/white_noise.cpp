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

#include "polysim/white_noise.hpp"

#include <cmath>

namespace polysim {

WhiteNoiseGrid::WhiteNoiseGrid(double dt, double dx, const SpaceTimeBox& box,
                               RandomStream& stream)
    : dt_(dt), dx_(dx), box_(box) {
  box.validate();
  if (!(dt > 0.0) || !(dx > 0.0))
    throw std::domain_error("WhiteNoiseGrid: steps must be positive");
  nt_ = std::int64_t(std::llround((box.t_max - box.t_min) / dt));
  nx_ = std::int64_t(std::llround((box.x_max - box.x_min) / dx));
  if (nt_ < 1 || nx_ < 1)
    throw std::domain_error("WhiteNoiseGrid: box smaller than one cell");
  const double sd = std::sqrt(dt * dx);
  cells_.resize(static_cast<std::size_t>(nt_ * nx_));
  for (auto& c : cells_) c = sd * stream.normal();
}

double WhiteNoiseGrid::cell(std::int64_t ti, std::int64_t xi) const {
  if (ti < 0 || ti >= nt_ || xi < 0 || xi >= nx_)
    throw std::domain_error("WhiteNoiseGrid: cell index out of range");
  return cells_[static_cast<std::size_t>(ti * nx_ + xi)];
}

double WhiteNoiseGrid::mass(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& cells) const {
  double sum = 0.0;
  for (const auto& [ti, xi] : cells) sum += cell(ti, xi);
  return sum;
}

void WhiteNoiseGrid::zero_from_time(std::int64_t ti_from) {
  for (std::int64_t ti = std::max<std::int64_t>(ti_from, 0); ti < nt_; ++ti)
    for (std::int64_t xi = 0; xi < nx_; ++xi)
      cells_[static_cast<std::size_t>(ti * nx_ + xi)] = 0.0;
}

StreamedNoise::StreamedNoise(double dt, double dx, std::int64_t row_width,
                             std::uint64_t seed, std::uint64_t draw)
    : dt_(dt), dx_(dx), scale_(std::sqrt(dt * dx)), row_width_(row_width) {
  if (!(dt > 0.0) || !(dx > 0.0) || row_width < 1)
    throw std::domain_error("StreamedNoise: bad steps or row width");
  key_ = splitmix64(seed ^ splitmix64(draw + 0x9E3779B97F4A7C15ull));
  row_.resize(static_cast<std::size_t>(row_width));
}

double StreamedNoise::cell(std::int64_t ti, std::int64_t xi) const {
  if (xi < 0 || xi >= row_width_)
    throw std::domain_error("StreamedNoise: cell index out of range");
  if (ti != cached_row_) {
    RandomStream stream(key_, std::uint64_t(ti));
    for (auto& v : row_) v = scale_ * stream.normal();
    cached_row_ = ti;
  }
  return row_[static_cast<std::size_t>(xi)];
}

WhiteNoiseGrid sample_white_noise_grid(double dt, double dx,
                                       const SpaceTimeBox& box,
                                       RandomStream& stream) {
  return WhiteNoiseGrid(dt, dx, box, stream);
}

}  // namespace polysim

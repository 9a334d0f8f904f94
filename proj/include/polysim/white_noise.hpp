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

#ifndef POLYSIM_WHITE_NOISE_HPP
#define POLYSIM_WHITE_NOISE_HPP

#include <cstdint>
#include <vector>

#include "polysim/rng.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// Source of white-noise cell masses W_{i,j} ~ N(0, dt*dx), mutually
/// independent; addressed by (time index, space index).
class NoiseField {
 public:
  virtual ~NoiseField() = default;
  virtual double cell(std::int64_t ti, std::int64_t xi) const = 0;
  virtual double dt() const = 0;
  virtual double dx() const = 0;
};

/// Materialized lattice of independent centered Gaussian cell masses with
/// variance dt*dx; cells[i][j] covers [t_min + i dt, ...) x [x_min + j dx, ...).
class WhiteNoiseGrid final : public NoiseField {
 public:
  WhiteNoiseGrid(double dt, double dx, const SpaceTimeBox& box,
                 RandomStream& stream);

  double cell(std::int64_t ti, std::int64_t xi) const override;
  double dt() const override { return dt_; }
  double dx() const override { return dx_; }
  std::int64_t nt() const { return nt_; }
  std::int64_t nx() const { return nx_; }
  const SpaceTimeBox& box() const { return box_; }

  /// Mass of the union of a set of cells (for covariance checks).
  double mass(const std::vector<std::pair<std::int64_t, std::int64_t>>& cells)
      const;

  /// Zero every cell with time index >= ti_from (adaptedness checks).
  void zero_from_time(std::int64_t ti_from);

 private:
  double dt_, dx_;
  SpaceTimeBox box_;
  std::int64_t nt_, nx_;
  std::vector<double> cells_;  // row-major [ti * nx + xi]
};

/// Counter-based noise: cell (ti, xi) is a pure function of (seed, draw
/// index, ti, xi) with xi in [0, row_width).  Rows are generated lazily from
/// a per-row stream and cached, so sequential sweeps cost one Gaussian per
/// cell; an instance is not safe to share across threads.
class StreamedNoise final : public NoiseField {
 public:
  StreamedNoise(double dt, double dx, std::int64_t row_width,
                std::uint64_t seed, std::uint64_t draw);

  double cell(std::int64_t ti, std::int64_t xi) const override;
  double dt() const override { return dt_; }
  double dx() const override { return dx_; }

 private:
  double dt_, dx_, scale_;
  std::int64_t row_width_;
  std::uint64_t key_;
  mutable std::int64_t cached_row_ = -1;
  mutable std::vector<double> row_;
};

WhiteNoiseGrid sample_white_noise_grid(double dt, double dx,
                                       const SpaceTimeBox& box,
                                       RandomStream& stream);

}  // namespace polysim

#endif  // POLYSIM_WHITE_NOISE_HPP

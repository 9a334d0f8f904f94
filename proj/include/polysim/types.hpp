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

#ifndef POLYSIM_TYPES_HPP
#define POLYSIM_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polysim {

/// A point (s, x) of the space-time plane, s >= 0.
struct SpaceTimePoint {
  double s = 0.0;
  double x = 0.0;
};

/// Finite truncation window [t_min, t_max] x [x_min, x_max].
struct SpaceTimeBox {
  double t_min = 0.0;
  double t_max = 1.0;
  double x_min = -1.0;
  double x_max = 1.0;

  double area() const { return (t_max - t_min) * (x_max - x_min); }
  bool contains(const SpaceTimePoint& p) const {
    return p.s >= t_min && p.s <= t_max && p.x >= x_min && p.x <= x_max;
  }
  void validate() const {
    if (!(t_min < t_max) || !(x_min < x_max))
      throw std::domain_error("SpaceTimeBox: empty or inverted box");
    if (!std::isfinite(t_min) || !std::isfinite(t_max) ||
        !std::isfinite(x_min) || !std::isfinite(x_max))
      throw std::domain_error("SpaceTimeBox: non-finite bounds");
  }
};

/// Monte Carlo output: point estimate, standard error of the estimate and
/// the number of samples it was computed from.
struct EstimatorResult {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
};

/// Thrown when an adaptive sampler cannot reach its precision target within
/// the configured budget.  Carries the precision that was actually achieved.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, double achieved_stderr)
      : std::runtime_error(what), achieved_stderr_(achieved_stderr) {}
  double achieved_stderr() const { return achieved_stderr_; }

 private:
  double achieved_stderr_;
};

/// Thrown by combinatorial routines when the requested order exceeds the
/// configured maximum (guards against factorial blow-up).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a quadrature cannot certify the requested tolerance.
/// Carries the error bound that was achieved instead.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace polysim

#endif  // POLYSIM_TYPES_HPP

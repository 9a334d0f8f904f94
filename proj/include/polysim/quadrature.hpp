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

#ifndef POLYSIM_QUADRATURE_HPP
#define POLYSIM_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace polysim {

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
double gauss_integrate(const std::function<double(double)>& f, double a,
                       double b, int order = 16);

/// Adaptive Simpson quadrature with absolute tolerance.  Throws
/// ToleranceError when the depth cap is reached before the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-9, int max_depth = 48);

/// Composite Simpson with a fixed (even) number of intervals.
double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int intervals);

/// Composite trapezoid with Richardson refinement until the change is below
/// abs_tol (or max_levels reached; the achieved estimate delta is reported
/// through *achieved when non-null).
double refined_trapezoid(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, int max_levels = 14,
                         double* achieved = nullptr);

/// Halton low-discrepancy sequence in `dim` dimensions (prime bases).
class HaltonSequence {
 public:
  explicit HaltonSequence(int dim, std::uint64_t start_index = 1);
  /// Next point, each coordinate in (0, 1).
  void next(double* out);
  int dim() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_;
  std::vector<int> bases_;
};

}  // namespace polysim

#endif  // POLYSIM_QUADRATURE_HPP

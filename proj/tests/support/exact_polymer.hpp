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

// Test-only oracle: deterministic evaluation of the partition function of a
// small fixed environment by expanding exp(beta * energy) over subsets of
// points,
//   Z = sum_{S} lambda^{|S|} P[path passes through every tube slice in S],
// with the joint probabilities computed by composite-Simpson convolution
// (independent of the production quadrature).

#ifndef POLYSIM_TESTS_EXACT_POLYMER_HPP
#define POLYSIM_TESTS_EXACT_POLYMER_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "polysim/environment.hpp"
#include "polysim/polymer.hpp"

namespace polysim::test_support {

// P[B_{s_i} in [x_i - r/2, x_i + r/2] for all i] over sorted times, by
// forward convolution on Simpson grids per box.
inline double simpson_box_probability(const std::vector<double>& s,
                                      const std::vector<double>& x,
                                      double half_r, int intervals = 48) {
  const int n_nodes = intervals + 1;
  const auto density = [](double var, double dx) {
    return std::exp(-dx * dx / (2.0 * var)) /
           std::sqrt(2.0 * 3.14159265358979323846 * var);
  };
  std::vector<double> nodes(n_nodes), vals(n_nodes), prev_nodes, prev_vals;
  double s_prev = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double lo = x[i] - half_r, hi = x[i] + half_r;
    const double h = (hi - lo) / intervals;
    for (int q = 0; q < n_nodes; ++q) nodes[std::size_t(q)] = lo + q * h;
    const double ds = s[i] - s_prev;
    for (int q = 0; q < n_nodes; ++q) {
      double v;
      if (i == 0) {
        v = density(ds, nodes[std::size_t(q)]);
      } else {
        v = 0.0;
        const double hp =
            (prev_nodes.back() - prev_nodes.front()) / intervals;
        for (int p = 0; p < n_nodes; ++p) {
          const double w =
              (p == 0 || p == intervals) ? 1.0 : (p % 2 == 1 ? 4.0 : 2.0);
          v += w * prev_vals[std::size_t(p)] *
               density(ds, nodes[std::size_t(q)] - prev_nodes[std::size_t(p)]);
        }
        v *= hp / 3.0;
      }
      vals[std::size_t(q)] = v;
    }
    prev_nodes = nodes;
    prev_vals = vals;
    s_prev = s[i];
  }
  const double h = (prev_nodes.back() - prev_nodes.front()) / intervals;
  double total = 0.0;
  for (int p = 0; p < n_nodes; ++p) {
    const double w = (p == 0 || p == intervals) ? 1.0 : (p % 2 == 1 ? 4.0 : 2.0);
    total += w * prev_vals[std::size_t(p)];
  }
  return total * h / 3.0;
}

// Exact (deterministic) Z for a small environment; subsets whose cheap
// upper bound falls below `drop_tol` are skipped and their bound is
// accumulated into *dropped when provided.
inline double exact_partition_Z(const Environment& env,
                                const PolymerParams& params,
                                double drop_tol = 1e-13,
                                double* dropped = nullptr) {
  std::vector<double> ts, xs;
  for (const auto& p : env.points) {
    if (p.s > 0.0 && p.s <= params.t) {
      ts.push_back(p.s);
      xs.push_back(p.x);
    }
  }
  const int n = int(ts.size());
  const double lam = params.lambda();
  const double half_r = 0.5 * params.r;
  double total = 0.0;
  double lost = 0.0;
  std::vector<double> sub_s, sub_x;
  // DFS over subsets in time order with the running bound
  // lambda^{|S|} prod min(1, r / sqrt(2 pi ds)).
  const std::function<void(int, double)> walk = [&](int start, double bound) {
    total += lam == 0.0 && !sub_s.empty()
                 ? 0.0
                 : std::pow(lam, double(sub_s.size())) *
                       (sub_s.empty()
                            ? 1.0
                            : simpson_box_probability(sub_s, sub_x, half_r));
    for (int i = start; i < n; ++i) {
      const double ds = ts[std::size_t(i)] - (sub_s.empty() ? 0.0 : sub_s.back());
      const double step_bound =
          std::fabs(lam) *
          std::min(1.0, params.r / std::sqrt(2.0 * 3.14159265358979323846 *
                                             std::max(ds, 1e-300)));
      const double next_bound = bound * step_bound;
      // everything below this branch is bounded by next_bound times the
      // number of remaining subsets
      const double branch_bound = next_bound * std::pow(2.0, double(n - i - 1));
      if (branch_bound < drop_tol) {
        lost += branch_bound;
        continue;
      }
      sub_s.push_back(ts[std::size_t(i)]);
      sub_x.push_back(xs[std::size_t(i)]);
      walk(i + 1, next_bound);
      sub_s.pop_back();
      sub_x.pop_back();
    }
  };
  walk(0, 1.0);
  if (dropped) *dropped = lost;
  return total;
}

inline double exact_renormalized_W(const Environment& env,
                                   const PolymerParams& params,
                                   double drop_tol = 1e-13,
                                   double* dropped = nullptr) {
  return std::exp(-params.lambda() * params.nu * params.r * params.t) *
         exact_partition_Z(env, params, drop_tol, dropped);
}

}  // namespace polysim::test_support

#endif  // POLYSIM_TESTS_EXACT_POLYMER_HPP

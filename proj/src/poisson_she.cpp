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

#include "polysim/poisson_she.hpp"

#include <algorithm>
#include <cmath>

#include "polysim/heat_kernel.hpp"
#include "polysim/quadrature.hpp"

namespace polysim {

TestFunction bump_test_function(double a, double amplitude) {
  if (!(a > 0.0)) throw std::domain_error("bump_test_function: a must be > 0");
  TestFunction tf;
  tf.support_radius = a;
  tf.value = [a, amplitude](double x) -> double {
    const double u = x / a;
    const double d = 1.0 - u * u;
    if (d <= 1e-12) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / d);
  };
  tf.second_derivative = [a, amplitude](double x) -> double {
    const double u = x / a;
    const double d = 1.0 - u * u;
    if (d <= 1e-12) return 0.0;
    const double g1 = -2.0 * u / (d * d);
    const double g2 = -2.0 * (1.0 + 3.0 * u * u) / (d * d * d);
    return amplitude * std::exp(1.0 - 1.0 / d) * (g2 + g1 * g1) / (a * a);
  };
  return tf;
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Environment points that can influence W(s, x) for s <= t and |x| <= a:
// anything beyond the diffusive cone widened by the support is untouchable.
std::vector<SpaceTimePoint> effective_points(const Environment& env,
                                             const PolymerParams& p,
                                             double a) {
  std::vector<SpaceTimePoint> pts;
  for (const auto& q : env.points) {
    if (!(q.s > 0.0 && q.s <= p.t)) continue;
    if (std::fabs(q.x) > 6.0 * std::sqrt(q.s) + a + 0.5 * p.r + 3.0) continue;
    pts.push_back(q);
  }
  return pts;
}

// Estimates linear functionals int g_row(x) W(s, x) dx of the P2P field on
// one environment by bridge Monte Carlo.
//
// A bridge to (s, x) is the zero-pinned bridge plus the drift (s_i/s) x, so
// one set of zero-pinned paths serves every x node; all rows share the same
// paths and the returned standard errors are per row.  The caller supplies
// x nodes and per-node weights (quadrature weight times rho(s, x) times the
// test-function factor); this evaluator attaches exp(beta E - lambda nu r s).
class FieldFunctionalEvaluator {
 public:
  FieldFunctionalEvaluator(const PolymerParams& p, std::int64_t n_paths)
      : p_(p), n_paths_(n_paths) {
    exp_table_.resize(64);
    for (std::size_t k = 0; k < exp_table_.size(); ++k)
      exp_table_[k] = std::exp(p.beta * double(k));
  }

  // `active` holds the points the field at bridge horizon s may collect;
  // the caller fixes it per smooth segment (left or right limit in s).
  void run(double s, std::span<const SpaceTimePoint> active,
           std::span<const double> xs,
           const std::vector<std::vector<double>>& weight_rows,
           RandomStream& stream, MeanSe* out) const {
    std::vector<double> times, ys;
    for (const auto& q : active) {
      times.push_back(q.s);
      ys.push_back(q.x);
    }
    const std::size_t m = times.size();
    const std::size_t nx = xs.size();
    const std::size_t rows = weight_rows.size();
    const double renorm = std::exp(-p_.lambda() * p_.nu * p_.r * s);

    // With no active points every path weight is exp(-lambda nu r s).
    if (m == 0 || p_.beta == 0.0) {
      for (std::size_t rw = 0; rw < rows; ++rw) {
        double sum = 0.0;
        for (std::size_t q = 0; q < nx; ++q) sum += weight_rows[rw][q];
        out[rw] = {sum * renorm, 0.0};
      }
      return;
    }

    std::vector<double> z(m), v(m), drift(m);
    std::vector<double> acc(rows, 0.0), acc2(rows, 0.0);
    std::vector<double> row_val(rows);
    const std::int64_t pairs = (n_paths_ + 1) / 2;
    for (std::int64_t pair = 0; pair < pairs; ++pair) {
      for (std::size_t i = 0; i < m; ++i) z[i] = stream.normal();
      std::vector<double> pair_sum(rows, 0.0);
      for (int sign = 0; sign < 2; ++sign) {
        double b = 0.0, s_prev = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double ds = times[i] - s_prev;
          const double rem = s - s_prev;
          const double mean = b - ds / rem * b;  // zero-pinned bridge
          const double sd = std::sqrt(ds * (s - times[i]) / rem);
          b = mean + sd * (sign == 0 ? z[i] : -z[i]);
          v[i] = b;
          drift[i] = times[i] / s;
          s_prev = times[i];
        }
        std::fill(row_val.begin(), row_val.end(), 0.0);
        for (std::size_t q = 0; q < nx; ++q) {
          int e = 0;
          for (std::size_t i = 0; i < m; ++i) {
            if (std::fabs(ys[i] - v[i] - drift[i] * xs[q]) <= 0.5 * p_.r) ++e;
          }
          const double w =
              (e < int(exp_table_.size()) ? exp_table_[static_cast<std::size_t>(e)]
                                          : std::exp(p_.beta * e)) *
              renorm;
          for (std::size_t rw = 0; rw < rows; ++rw)
            row_val[rw] += weight_rows[rw][q] * w;
        }
        for (std::size_t rw = 0; rw < rows; ++rw)
          pair_sum[rw] += 0.5 * row_val[rw];
      }
      for (std::size_t rw = 0; rw < rows; ++rw) {
        acc[rw] += pair_sum[rw];
        acc2[rw] += pair_sum[rw] * pair_sum[rw];
      }
    }
    for (std::size_t rw = 0; rw < rows; ++rw) {
      const double mean = acc[rw] / double(pairs);
      const double var =
          pairs > 1
              ? std::max(0.0, (acc2[rw] - double(pairs) * mean * mean) /
                                  (double(pairs) * double(pairs - 1)))
              : 0.0;
      out[rw] = {mean, std::sqrt(var)};
    }
  }

 private:
  PolymerParams p_;
  std::int64_t n_paths_;
  std::vector<double> exp_table_;
};

// Points with time <= cutoff (right limit) or < cutoff (left limit).
std::vector<SpaceTimePoint> active_until(const std::vector<SpaceTimePoint>& pts,
                                         double cutoff, bool inclusive) {
  std::vector<SpaceTimePoint> out;
  for (const auto& q : pts)
    if (inclusive ? (q.s <= cutoff) : (q.s < cutoff)) out.push_back(q);
  return out;
}

}  // namespace

SheResidualResult verify_poisson_she(const Environment& env,
                                     const PolymerParams& params,
                                     const TestFunction& phi,
                                     const SheResidualOptions& opts,
                                     RandomStream& stream) {
  params.validate();
  if (!phi.value || !phi.second_derivative)
    throw std::domain_error("verify_poisson_she: phi needs value and phi''");
  const double a = phi.support_radius;
  const double lam = params.lambda();
  const double nur = params.nu * params.r;
  const std::vector<SpaceTimePoint> pts = effective_points(env, params, a);
  const FieldFunctionalEvaluator eval(params, opts.n_paths);
  const GaussRule& gl = gauss_legendre(64);

  // The x integrals use the substitution x = sqrt(s) u, which resolves the
  // near-delta heat kernel at small s and the support of phi at large s:
  //   int rho(s, x) g(x) h(x) dx = int rho(1, u) g(sqrt(s) u) h(...) du.
  const auto make_grid = [&](double s, std::vector<double>& xs,
                             std::vector<double>& base_w) {
    const double u_max = s > 0.0 ? std::min(8.0, a / std::sqrt(s)) : 8.0;
    const std::size_t n = gl.nodes.size();
    xs.resize(n);
    base_w.resize(n);
    const double sqrt_s = std::sqrt(s);
    for (std::size_t q = 0; q < n; ++q) {
      const double u = u_max * gl.nodes[q];
      xs[q] = sqrt_s * u;
      base_w[q] = u_max * gl.weights[q] * heat_kernel(1.0, u);
    }
  };

  double var_total = 0.0;
  SheResidualResult res;

  {  // left-hand side at s = t
    std::vector<double> xs, bw;
    make_grid(params.t, xs, bw);
    std::vector<std::vector<double>> rows(1, std::vector<double>(xs.size()));
    for (std::size_t q = 0; q < xs.size(); ++q)
      rows[0][q] = bw[q] * phi.value(xs[q]);
    MeanSe out;
    RandomStream rs = stream.child(1);
    const auto active = active_until(pts, params.t, true);
    eval.run(params.t, active, xs, rows, rs, &out);
    res.lhs = out.mean;
    var_total += out.se * out.se;
  }

  // Time integral of H(s) = 1/2 F_B(s) - lambda nu r F_C(s), with
  // F_B = int W(s,.) phi'' dx and F_C = int W(s,.) phi dx, by per-segment
  // Simpson between the jump times of the field.
  std::vector<double> cuts{0.0};
  for (const auto& q : pts) cuts.push_back(q.s);
  cuts.push_back(params.t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double heat_term = 0.0, comp_term = 0.0;
  std::uint64_t node_salt = 100;
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double s0 = cuts[seg], s1 = cuts[seg + 1];
    const double len = s1 - s0;
    if (!(len > 0.0)) continue;
    // On (s0, s1] the field collects exactly the points with s_i <= s0; the
    // nodes at both ends take this one-sided extension.
    const auto segment_active = active_until(pts, s0, true);
    const int segn = std::max(
        8, 2 * int(std::lround(double(opts.s_nodes) * len / params.t / 2.0)));
    const double hs = len / segn;
    for (int q = 0; q <= segn; ++q) {
      const double s = s0 + q * hs;
      const double w_node =
          hs / 3.0 * ((q == 0 || q == segn) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0));
      std::vector<double> xs, bw;
      make_grid(s, xs, bw);
      // Rows: phi'' pairing, phi pairing, and their residual combination
      // 1/2 phi'' - lambda nu r phi evaluated on the same paths so that the
      // node's contribution carries an exact standard error.
      std::vector<std::vector<double>> rows(3,
                                            std::vector<double>(xs.size()));
      for (std::size_t m = 0; m < xs.size(); ++m) {
        const double pv = phi.value(xs[m]);
        const double pdd = phi.second_derivative(xs[m]);
        rows[0][m] = bw[m] * pdd;
        rows[1][m] = bw[m] * pv;
        rows[2][m] = bw[m] * (0.5 * pdd - lam * nur * pv);
      }
      MeanSe out[3];
      RandomStream rs = stream.child(node_salt++);
      eval.run(s, segment_active, xs, rows, rs, out);
      heat_term += w_node * 0.5 * out[0].mean;
      comp_term += w_node * out[1].mean;
      var_total += w_node * w_node * out[2].se * out[2].se;
    }
  }

  // Jump part: for each point, int phi(x) W(s_i-, x) 1{|x - y_i| <= r/2} dx
  // over the window clipped to the support and to 8 standard deviations.
  double jump_sum = 0.0;
  std::uint64_t jump_salt = std::uint64_t(1) << 20;
  for (const auto& q : pts) {
    const double sqrt_s = std::sqrt(q.s);
    const double lo =
        std::max({-a, q.x - 0.5 * params.r, -8.0 * sqrt_s});
    const double hi = std::min({a, q.x + 0.5 * params.r, 8.0 * sqrt_s});
    if (!(lo < hi)) continue;
    const double u_lo = lo / sqrt_s, u_hi = hi / sqrt_s;
    std::vector<double> xs(gl.nodes.size());
    std::vector<std::vector<double>> rows(1,
                                          std::vector<double>(xs.size()));
    for (std::size_t m = 0; m < xs.size(); ++m) {
      const double u = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * gl.nodes[m];
      xs[m] = sqrt_s * u;
      rows[0][m] = 0.5 * (u_hi - u_lo) * gl.weights[m] *
                   heat_kernel(1.0, u) * phi.value(xs[m]);
    }
    MeanSe out;
    RandomStream rs = stream.child(jump_salt++);
    const auto before = active_until(pts, q.s, false);
    eval.run(q.s, before, xs, rows, rs, &out);
    jump_sum += out.mean;
    var_total += lam * lam * out.se * out.se;
  }

  res.heat_term = heat_term;
  res.noise_term = lam * (jump_sum - nur * comp_term);
  res.residual = res.lhs - phi.value(0.0) - res.heat_term - res.noise_term;
  res.mc_stderr = std::sqrt(var_total);
  res.error_budget = 3.0 * res.mc_stderr + opts.quad_allowance;
  return res;
}

}  // namespace polysim

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

#include "polysim/chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "polysim/heat_kernel.hpp"
#include "polysim/parallel.hpp"
#include "polysim/quadrature.hpp"

namespace polysim {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

void check_simplex(std::span<const double> s, double horizon) {
  double prev = 0.0;
  for (double v : s) {
    if (!(v > prev) || !(v <= horizon))
      throw std::domain_error("SimplexKernel: arguments outside the simplex");
    prev = v;
  }
}

}  // namespace

double FockElement::norm_sq() const {
  double sum = scalar * scalar;
  for (const auto& k : kernels) {
    if (!k.l2_norm_sq)
      throw std::domain_error("FockElement: kernel without a norm accessor");
    sum += k.l2_norm_sq();
  }
  return sum;
}

KernelFn symmetrize(const KernelFn& g, int k) {
  if (k < 1) throw std::domain_error("symmetrize: k must be >= 1");
  if (k > 8) throw CapacityError("symmetrize: k too large");
  return [g, k](std::span<const double> s,
                std::span<const double> x) -> double {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> ps(k), px(k);
    double sum = 0.0;
    std::int64_t count = 0;
    do {
      for (int i = 0; i < k; ++i) {
        ps[i] = s[static_cast<std::size_t>(perm[i])];
        px[i] = x[static_cast<std::size_t>(perm[i])];
      }
      sum += g(ps, px);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / double(count);
  };
}

double brownian_box_probability(std::span<const double> s,
                                std::span<const double> x, double half_width,
                                int gl_order) {
  if (s.size() != x.size())
    throw std::domain_error("brownian_box_probability: length mismatch");
  if (!(half_width > 0.0))
    throw std::domain_error("brownian_box_probability: width must be > 0");
  const std::size_t k = s.size();
  if (k == 0) return 1.0;
  double prev = 0.0;
  for (double v : s) {
    if (!(v > prev))
      throw std::domain_error(
          "brownian_box_probability: times must be strictly increasing > 0");
    prev = v;
  }
  const GaussRule& rule = gauss_legendre(gl_order);
  const int m = gl_order;
  // Forward sweep of the Markov factorization; `vals` carries the density
  // mass at the quadrature nodes of the current box.
  std::vector<double> nodes(m), vals(m), next(m), node_prev(m);
  double s_prev = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double c = x[i], h = half_width;
    for (int q = 0; q < m; ++q) nodes[q] = c + h * rule.nodes[q];
    const double ds = s[i] - s_prev;
    if (i == 0) {
      for (int q = 0; q < m; ++q)
        vals[q] = heat_kernel(ds, nodes[q]) * rule.weights[q] * h;
    } else {
      for (int q = 0; q < m; ++q) {
        double acc = 0.0;
        for (int r = 0; r < m; ++r)
          acc += vals[r] * heat_kernel(ds, nodes[q] - node_prev[r]);
        next[q] = acc * rule.weights[q] * h;
      }
      std::swap(vals, next);
    }
    node_prev = nodes;
    s_prev = s[i];
  }
  return std::accumulate(vals.begin(), vals.end(), 0.0);
}

double rho_k_norm_sq(int k) {
  if (k < 0) throw std::domain_error("rho_k_norm_sq: k must be >= 0");
  return std::pow(2.0, -k) / std::tgamma(0.5 * k + 1.0);
}

SimplexKernel rho_k_kernel(int k) {
  if (k < 0) throw std::domain_error("rho_k_kernel: k must be >= 0");
  SimplexKernel kernel;
  kernel.arity = k;
  kernel.horizon = 1.0;
  kernel.eval = [k](std::span<const double> s,
                    std::span<const double> x) -> double {
    if (int(s.size()) != k || int(x.size()) != k)
      throw std::domain_error("rho_k_kernel: arity mismatch");
    if (k == 0) return 1.0;
    check_simplex(s, 1.0);
    double prod = heat_kernel(s[0], x[0]);
    for (int i = 1; i < k; ++i)
      prod *= heat_kernel(s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(i - 1)],
                          x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - 1)]);
    return prod;
  };
  kernel.l2_norm_sq = [k]() { return rho_k_norm_sq(k); };
  return kernel;
}

SimplexKernel T_k_W_kernel(const PolymerParams& params, int k, int gl_order) {
  params.validate();
  if (k < 0) throw std::domain_error("T_k_W_kernel: k must be >= 0");
  SimplexKernel kernel;
  kernel.arity = k;
  kernel.horizon = params.t;
  const double lam_k = std::pow(params.lambda(), k);
  const double half_r = 0.5 * params.r;
  const double horizon = params.t;
  kernel.eval = [k, lam_k, half_r, horizon, gl_order](
                    std::span<const double> s,
                    std::span<const double> x) -> double {
    if (int(s.size()) != k || int(x.size()) != k)
      throw std::domain_error("T_k_W_kernel: arity mismatch");
    if (k == 0) return 1.0;
    check_simplex(s, horizon);
    if (lam_k == 0.0) return 0.0;
    return lam_k * brownian_box_probability(s, x, half_r, gl_order);
  };
  return kernel;
}

SimplexKernel phi_t_kernel(const ScalingSchedule& schedule, double t, int k,
                           int gl_order) {
  if (k < 0) throw std::domain_error("phi_t_kernel: k must be >= 0");
  const PolymerParams params = schedule.eval(t);
  const double gamma = gamma_t(params, schedule.beta_star);
  const double scale = std::pow(params.lambda() / gamma, k);
  const double half_eps = 0.5 * params.r / std::sqrt(t);
  SimplexKernel kernel;
  kernel.arity = k;
  kernel.horizon = 1.0;
  kernel.eval = [k, scale, half_eps, gl_order](
                    std::span<const double> s,
                    std::span<const double> x) -> double {
    if (int(s.size()) != k || int(x.size()) != k)
      throw std::domain_error("phi_t_kernel: arity mismatch");
    if (k == 0) return 1.0;
    check_simplex(s, 1.0);
    return scale * brownian_box_probability(s, x, half_eps, gl_order);
  };
  return kernel;
}

namespace {

// Recursive enumeration of ordered tuples of pairwise distinct indices.
void distinct_tuples(const Environment& env, int k, std::vector<int>& idx,
                     std::vector<char>& used, std::vector<double>& s,
                     std::vector<double>& x, const KernelFn& g, double& acc) {
  const int depth = int(idx.size());
  if (depth == k) {
    acc += g(s, x);
    return;
  }
  const int n = int(env.points.size());
  for (int i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    used[static_cast<std::size_t>(i)] = 1;
    idx.push_back(i);
    s.push_back(env.points[static_cast<std::size_t>(i)].s);
    x.push_back(env.points[static_cast<std::size_t>(i)].x);
    distinct_tuples(env, k, idx, used, s, x, g, acc);
    s.pop_back();
    x.pop_back();
    idx.pop_back();
    used[static_cast<std::size_t>(i)] = 0;
  }
}

}  // namespace

double factorial_measure_sum(const Environment& env, int k, const KernelFn& g,
                             int max_order) {
  if (k < 1) throw std::domain_error("factorial_measure_sum: k must be >= 1");
  if (k > max_order)
    throw CapacityError("factorial_measure_sum: order above configured max");
  const double n = double(env.points.size());
  if (std::pow(n, k) > 2e8)
    throw CapacityError("factorial_measure_sum: tuple count too large");
  double acc = 0.0;
  std::vector<int> idx;
  std::vector<char> used(env.points.size(), 0);
  std::vector<double> s, x;
  distinct_tuples(env, k, idx, used, s, x, g, acc);
  return acc;
}

namespace {

// Integrates g over the coordinates not in `fixed_mask`, the fixed ones
// pinned at the given values.  One free pair: product Gauss; more: Halton.
double lebesgue_part(const KernelFn& g, int k, unsigned fixed_mask,
                     const std::vector<double>& fs,
                     const std::vector<double>& fx, double t,
                     const QuadratureSpec& spec, double* spread) {
  std::vector<int> free_slots;
  for (int i = 0; i < k; ++i)
    if (!(fixed_mask >> i & 1u)) free_slots.push_back(i);
  const int m = int(free_slots.size());
  std::vector<double> s(static_cast<std::size_t>(k));
  std::vector<double> x(static_cast<std::size_t>(k));
  {
    int fi = 0;
    for (int i = 0; i < k; ++i) {
      if (fixed_mask >> i & 1u) {
        s[static_cast<std::size_t>(i)] = fs[static_cast<std::size_t>(fi)];
        x[static_cast<std::size_t>(i)] = fx[static_cast<std::size_t>(fi)];
        ++fi;
      }
    }
  }
  if (m == 0) return g(s, x);

  const double x_span = spec.x_hi - spec.x_lo;
  if (m == 1) {
    const int slot = free_slots[0];
    const auto inner = [&](double sv, double xv) {
      s[static_cast<std::size_t>(slot)] = sv;
      x[static_cast<std::size_t>(slot)] = xv;
      return g(s, x);
    };
    const GaussRule& rule = gauss_legendre(spec.gauss_points);
    double total = 0.0;
    for (int a = 0; a < spec.gauss_points; ++a) {
      const double sv = 0.5 * t * (1.0 + rule.nodes[static_cast<std::size_t>(a)]);
      double row = 0.0;
      for (int b = 0; b < spec.gauss_points; ++b) {
        const double xv = spec.x_lo + 0.5 * x_span *
                                          (1.0 + rule.nodes[static_cast<std::size_t>(b)]);
        row += rule.weights[static_cast<std::size_t>(b)] * inner(sv, xv);
      }
      total += rule.weights[static_cast<std::size_t>(a)] * row;
    }
    return total * 0.25 * t * x_span;
  }

  // Quasi-Monte Carlo over ([0,t] x [x_lo, x_hi])^m, batched so the spread
  // across batches reports an error scale instead of assuming one.
  HaltonSequence seq(2 * m);
  std::vector<double> u(static_cast<std::size_t>(2 * m));
  const int batches = 8;
  const std::int64_t per = std::max<std::int64_t>(spec.qmc_nodes / batches, 1);
  std::vector<double> batch_means;
  batch_means.reserve(batches);
  const double volume = std::pow(t * x_span, m);
  for (int bi = 0; bi < batches; ++bi) {
    double acc = 0.0;
    for (std::int64_t it = 0; it < per; ++it) {
      seq.next(u.data());
      for (int j = 0; j < m; ++j) {
        s[static_cast<std::size_t>(free_slots[static_cast<std::size_t>(j)])] = t * u[static_cast<std::size_t>(2 * j)];
        x[static_cast<std::size_t>(free_slots[static_cast<std::size_t>(j)])] =
            spec.x_lo + x_span * u[static_cast<std::size_t>(2 * j + 1)];
      }
      acc += g(s, x);
    }
    batch_means.push_back(acc / double(per) * volume);
  }
  const double mean =
      std::accumulate(batch_means.begin(), batch_means.end(), 0.0) / batches;
  double ss = 0.0;
  for (double v : batch_means) ss += (v - mean) * (v - mean);
  const double est_err = std::sqrt(ss / (batches * (batches - 1.0)));
  if (spread) *spread = std::max(*spread, est_err);
  return mean;
}

void fixed_tuples(const Environment& env, int j, std::vector<double>& fs,
                  std::vector<double>& fx, std::vector<char>& used,
                  const std::function<void()>& emit) {
  if (int(fs.size()) == j) {
    emit();
    return;
  }
  for (std::size_t i = 0; i < env.points.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    fs.push_back(env.points[i].s);
    fx.push_back(env.points[i].x);
    fixed_tuples(env, j, fs, fx, used, emit);
    fs.pop_back();
    fx.pop_back();
    used[i] = 0;
  }
}

}  // namespace

double wiener_ito_integral(const Environment& env, double nu, int k,
                           const KernelFn& g, const QuadratureSpec& spec,
                           int max_order) {
  if (k < 1) throw std::domain_error("wiener_ito_integral: k must be >= 1");
  if (k > max_order)
    throw CapacityError("wiener_ito_integral: order above configured max");
  const double t = env.box.t_max;
  double total = 0.0;
  double spread = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    const int j = std::popcount(mask);
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    const double nu_pow = std::pow(nu, k - j);
    double subset_sum = 0.0;
    if (j == 0) {
      subset_sum =
          lebesgue_part(g, k, mask, {}, {}, t, spec, &spread);
    } else {
      std::vector<double> fs, fx;
      std::vector<char> used(env.points.size(), 0);
      fixed_tuples(env, j, fs, fx, used, [&]() {
        subset_sum += lebesgue_part(g, k, mask, fs, fx, t, spec, &spread);
      });
    }
    total += sign * nu_pow * subset_sum;
  }
  if (spec.tolerance > 0.0 && spread > spec.tolerance)
    throw ToleranceError("wiener_ito_integral: QMC spread above tolerance",
                         spread);
  return total;
}

namespace {

double box_area_intersection(const SpaceTimeBox& a, const SpaceTimeBox& b) {
  const double dt = std::max(
      0.0, std::min(a.t_max, b.t_max) - std::max(a.t_min, b.t_min));
  const double dx = std::max(
      0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
  return dt * dx;
}

std::int64_t count_in(const Environment& env, const SpaceTimeBox& b) {
  std::int64_t n = 0;
  for (const auto& p : env.points)
    if (b.contains(p)) ++n;
  return n;
}

}  // namespace

double box_wiener_ito(const Environment& env, double nu,
                      const BoxProductKernel& g) {
  const int k = g.arity();
  if (k == 1) {
    return double(count_in(env, g.boxes[0])) - nu * g.boxes[0].area();
  }
  if (k == 2) {
    const auto& a = g.boxes[0];
    const auto& b = g.boxes[1];
    const double na = double(count_in(env, a));
    const double nb = double(count_in(env, b));
    SpaceTimeBox inter{std::max(a.t_min, b.t_min), std::min(a.t_max, b.t_max),
                       std::max(a.x_min, b.x_min), std::min(a.x_max, b.x_max)};
    double nab = 0.0;
    if (inter.t_min < inter.t_max && inter.x_min < inter.x_max)
      nab = double(count_in(env, inter));
    const double pair_sum = na * nb - nab;
    return pair_sum - nu * (b.area() * na + a.area() * nb) +
           nu * nu * a.area() * b.area();
  }
  throw CapacityError("box_wiener_ito: only k <= 2 is supported");
}

double box_sym_inner_product(const BoxProductKernel& g,
                             const BoxProductKernel& h) {
  const int k = g.arity();
  if (h.arity() != k)
    throw std::domain_error("box_sym_inner_product: arity mismatch");
  if (k == 1) return box_area_intersection(g.boxes[0], h.boxes[0]);
  if (k == 2) {
    const double direct = box_area_intersection(g.boxes[0], h.boxes[0]) *
                          box_area_intersection(g.boxes[1], h.boxes[1]);
    const double crossed = box_area_intersection(g.boxes[0], h.boxes[1]) *
                           box_area_intersection(g.boxes[1], h.boxes[0]);
    return 0.5 * (direct + crossed);
  }
  throw CapacityError("box_sym_inner_product: only k <= 2 is supported");
}

CovarianceCheck covariance_check(double nu, const BoxProductKernel& g,
                                 const BoxProductKernel& h,
                                 std::int64_t n_envs,
                                 const SpaceTimeBox& env_box,
                                 std::uint64_t seed, int threads) {
  if (g.arity() > 2 || h.arity() > 2)
    throw CapacityError("covariance_check: orders above 2 are not supported");
  if (n_envs < 2)
    throw std::domain_error("covariance_check: need at least 2 environments");
  std::vector<double> prod(static_cast<std::size_t>(n_envs));
  parallel_for(static_cast<std::size_t>(n_envs), threads, [&](std::size_t i) {
    RandomStream stream(seed, (std::uint64_t(2) << 48) + i);
    const Environment env = sample_environment(env_box, nu, stream);
    prod[i] = box_wiener_ito(env, nu, g) * box_wiener_ito(env, nu, h);
  });
  CovarianceCheck out;
  const double mean =
      std::accumulate(prod.begin(), prod.end(), 0.0) / double(n_envs);
  double ss = 0.0;
  for (double v : prod) ss += (v - mean) * (v - mean);
  out.empirical = mean;
  out.stderr_ = std::sqrt(ss / (double(n_envs) * double(n_envs - 1)));
  out.theoretical =
      g.arity() == h.arity()
          ? factorial(g.arity()) * std::pow(nu, g.arity()) *
                box_sym_inner_product(g, h)
          : 0.0;
  return out;
}

ChaosResult chaos_reconstruct_W(const Environment& env,
                                const PolymerParams& params, int K,
                                int gl_order, int max_order) {
  params.validate();
  if (K < 0) throw std::domain_error("chaos_reconstruct_W: K must be >= 0");
  if (K > max_order)
    throw CapacityError("chaos_reconstruct_W: order above configured max");
  const double lam = params.lambda();
  const double c = params.nu * lam * params.r * params.t;
  const double half_r = 0.5 * params.r;

  // S_j = factorial-measure sum of T_j W over ordered distinct j-tuples.
  // The kernel is symmetric, so S_j = j! * (sum over time-ordered tuples);
  // env.points are time-sorted, making index combinations already ordered.
  const int n = int(env.points.size());
  std::vector<double> S(static_cast<std::size_t>(K) + 1, 0.0);
  S[0] = 1.0;
  std::vector<double> s, x;
  std::vector<int> combo;
  for (int j = 1; j <= K && lam != 0.0; ++j) {
    double acc = 0.0;
    combo.assign(static_cast<std::size_t>(j), 0);
    s.assign(static_cast<std::size_t>(j), 0.0);
    x.assign(static_cast<std::size_t>(j), 0.0);
    const std::function<void(int, int)> walk = [&](int start, int depth) {
      if (depth == j) {
        acc += brownian_box_probability(s, x, half_r, gl_order);
        return;
      }
      for (int i = start; i <= n - (j - depth); ++i) {
        s[static_cast<std::size_t>(depth)] = env.points[static_cast<std::size_t>(i)].s;
        x[static_cast<std::size_t>(depth)] = env.points[static_cast<std::size_t>(i)].x;
        walk(i + 1, depth + 1);
      }
    };
    walk(0, 0);
    S[static_cast<std::size_t>(j)] = factorial(j) * std::pow(lam, j) * acc;
  }

  ChaosResult res;
  res.per_order.resize(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double omk = 0.0;
    for (int j = 0; j <= k; ++j)
      omk += binomial(k, j) * ((k - j) % 2 == 0 ? 1.0 : -1.0) *
             std::pow(c, k - j) * S[static_cast<std::size_t>(j)];
    res.per_order[static_cast<std::size_t>(k)] = omk / factorial(k);
    res.value += res.per_order[static_cast<std::size_t>(k)];
  }
  res.tail_l2 = chaos_tail_l2_bound(params, K);
  return res;
}

double chaos_tail_l2_bound(const PolymerParams& params, int K) {
  const double lam = params.lambda();
  const double a =
      params.nu * lam * lam * params.r * params.r * std::sqrt(0.5 * params.t);
  double tail_sq = 0.0;
  double log_a = a > 0.0 ? std::log(a) : -1e300;
  double last = 0.0;
  int k = K + 1;
  for (; k <= K + 2000; ++k) {
    last = std::exp(k * log_a - std::lgamma(0.5 * k + 1.0));
    tail_sq += last;
    if (last < 1e-320) break;
    // once the term ratio certifies <= 1/2, close with a geometric bound
    const double ratio = a * std::exp(std::lgamma(0.5 * k + 1.0) -
                                      std::lgamma(0.5 * (k + 1) + 1.0));
    if (ratio <= 0.5 && k > K + 4) {
      tail_sq += last;  // remaining mass <= last * sum ratio^j <= last
      break;
    }
  }
  return std::sqrt(tail_sq);
}

FockNorm fock_norm_rho(double beta, int K) {
  if (K < 0) throw std::domain_error("fock_norm_rho: K must be >= 0");
  FockNorm out;
  const double q = 0.5 * beta * beta;
  for (int k = 0; k <= K; ++k)
    out.partial_sum += std::exp(k * (q > 0 ? std::log(q) : -1e300) -
                                std::lgamma(0.5 * k + 1.0));
  if (q == 0.0) {
    out.partial_sum = 1.0;  // only the k = 0 term survives
    out.tail_bound = 0.0;
    return out;
  }
  double tail = 0.0;
  const double log_q = std::log(q);
  for (int k = K + 1; k <= K + 4000; ++k) {
    const double term = std::exp(k * log_q - std::lgamma(0.5 * k + 1.0));
    tail += term;
    if (term < 1e-320) break;
    const double ratio = q * std::exp(std::lgamma(0.5 * k + 1.0) -
                                      std::lgamma(0.5 * (k + 1) + 1.0));
    if (ratio <= 0.5 && k > K + 4) {
      tail += term;
      break;
    }
  }
  out.tail_bound = tail;
  return out;
}

EstimatorResult simplex_function_l2_mc(int arity, double horizon,
                                       const KernelFn& f,
                                       std::int64_t n_samples,
                                       RandomStream& stream) {
  if (arity < 1)
    throw std::domain_error("simplex_function_l2_mc: arity must be >= 1");
  if (n_samples < 2)
    throw std::domain_error("simplex_function_l2_mc: need n >= 2");
  const int k = arity;
  // q(s, x) = prod ds^{-1/2} / (D_k h^{k/2}) * rho^k(s, x); the estimator
  // f^2/q is bounded whenever |f| <= C rho^k.
  const double dk_scale =
      dirichlet_simplex_constant(k) * std::pow(horizon, 0.5 * k);
  std::vector<double> s(static_cast<std::size_t>(k));
  std::vector<double> x(static_cast<std::size_t>(k));
  std::vector<double> ds(static_cast<std::size_t>(k) + 1);
  double mean = 0.0, m2 = 0.0;
  std::int64_t count = 0;
  for (std::int64_t it = 0; it < n_samples; ++it) {
    // increments ~ Dirichlet(1/2, ..., 1/2, 1)
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      ds[static_cast<std::size_t>(i)] = stream.gamma(0.5);
      total += ds[static_cast<std::size_t>(i)];
    }
    ds[static_cast<std::size_t>(k)] = stream.exponential();
    total += ds[static_cast<std::size_t>(k)];
    double acc_s = 0.0, acc_x = 0.0;
    double sqrt_ds_prod = 1.0, rho_chain = 1.0;
    for (int i = 0; i < k; ++i) {
      const double inc = ds[static_cast<std::size_t>(i)] / total * horizon;
      acc_s += inc;
      s[static_cast<std::size_t>(i)] = acc_s;
      const double z = stream.normal();
      acc_x += std::sqrt(inc) * z;
      x[static_cast<std::size_t>(i)] = acc_x;
      sqrt_ds_prod *= std::sqrt(inc);
      rho_chain *= heat_kernel(inc, std::sqrt(inc) * z);
    }
    const double fv = f(s, x);
    const double est = fv * fv * dk_scale * sqrt_ds_prod / rho_chain;
    ++count;
    const double delta = est - mean;
    mean += delta / double(count);
    m2 += delta * (est - mean);
  }
  EstimatorResult res;
  res.value = mean;
  res.n = count;
  res.stderr_ = std::sqrt(m2 / (double(count - 1))) / std::sqrt(double(count));
  return res;
}

}  // namespace polysim

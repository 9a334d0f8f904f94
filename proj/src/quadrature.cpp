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

#include "polysim/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

#include "polysim/types.hpp"

namespace polysim {

namespace {

GaussRule make_gauss_legendre(int n) {
  // Newton iteration on Legendre roots; standard Golub-Welsch alternative
  // is unnecessary at these orders.
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

int nth_prime(int k) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (k < 0 || k >= int(sizeof(primes) / sizeof(primes[0])))
    throw std::domain_error("HaltonSequence: dimension too large");
  return primes[k];
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double v = 0.0;
  while (i > 0) {
    v += f * double(i % base);
    i /= base;
    f *= inv;
  }
  return v;
}

struct SimpsonCtx {
  const std::function<double(double)>* f;
  int max_depth;
};

double simpson_rec(const SimpsonCtx& ctx, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*ctx.f)(lm), frm = (*ctx.f)(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || h <= 1e-14 * (std::fabs(a) + 1.0))
    return left + right + delta / 15.0;
  if (depth >= ctx.max_depth)
    throw ToleranceError("adaptive_simpson: depth cap reached before tolerance",
                         std::fabs(delta) / 15.0);
  return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
  return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a,
                       double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i)
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  SimpsonCtx ctx{&f, max_depth};
  return simpson_rec(ctx, a, b, fa, fm, fb, whole, abs_tol, 0);
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int intervals) {
  if (intervals < 2 || intervals % 2 != 0)
    throw std::domain_error("composite_simpson: intervals must be even >= 2");
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

double refined_trapezoid(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, int max_levels,
                         double* achieved) {
  int n = 8;
  const auto trap = [&](int m) {
    const double h = (b - a) / m;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < m; ++i) s += f(a + i * h);
    return s * h;
  };
  double prev = trap(n);
  double delta = std::fabs(prev);
  for (int level = 0; level < max_levels; ++level) {
    n *= 2;
    const double cur = trap(n);
    delta = std::fabs(cur - prev);
    prev = cur;
    if (delta <= abs_tol) break;
  }
  if (achieved) *achieved = delta;
  return prev;
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t start_index)
    : dim_(dim), index_(start_index) {
  bases_.resize(dim);
  for (int i = 0; i < dim; ++i) bases_[i] = nth_prime(i);
}

void HaltonSequence::next(double* out) {
  for (int i = 0; i < dim_; ++i) out[i] = radical_inverse(index_, bases_[i]);
  ++index_;
  for (int i = 0; i < dim_; ++i) {
    if (out[i] <= 0.0) out[i] = 1e-12;
    if (out[i] >= 1.0) out[i] = 1.0 - 1e-12;
  }
}

}  // namespace polysim

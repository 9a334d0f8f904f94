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

#include "polysim/polymer.hpp"

#include <algorithm>
#include <cmath>

#include "polysim/heat_kernel.hpp"
#include "polysim/schedule.hpp"

namespace polysim {

double PolymerParams::lambda() const { return lambda_of_beta(beta); }

SpaceTimeBox standard_box(const PolymerParams& params, double c) {
  params.validate();
  const double w = c * std::sqrt(params.t) + params.r;
  return SpaceTimeBox{0.0, params.t, -w, w};
}

Environment sample_standard_environment(const PolymerParams& params,
                                        RandomStream& stream, double c) {
  return sample_environment(standard_box(params, c), params.nu, stream);
}

std::int64_t tube_energy(const PathSample& path, const Environment& env,
                         double r) {
  std::size_t n_expected = 0;
  for (const auto& p : env.points)
    if (p.s > 0.0 && p.s <= env.box.t_max) ++n_expected;
  if (path.times.size() != n_expected)
    throw std::invalid_argument(
        "tube_energy: path must be sampled at the environment's point times");
  std::int64_t energy = 0;
  std::size_t j = 0;
  for (const auto& p : env.points) {
    if (!(p.s > 0.0 && p.s <= env.box.t_max)) continue;
    if (path.times[j] != p.s)
      throw std::invalid_argument("tube_energy: time mismatch with environment");
    if (std::fabs(p.x - path.values[j]) <= 0.5 * r) ++energy;
    ++j;
  }
  return energy;
}

namespace {

struct PointSet {
  std::vector<double> dt_sqrt;  // sqrt of increments between point times
  std::vector<double> xs;       // point positions
};

// Points of the environment restricted to (0, horizon], as increments.
PointSet relevant_points(const Environment& env, double horizon) {
  PointSet ps;
  ps.dt_sqrt.reserve(env.points.size());
  ps.xs.reserve(env.points.size());
  double s_prev = 0.0;
  for (const auto& p : env.points) {
    if (!(p.s > 0.0 && p.s <= horizon)) continue;
    ps.dt_sqrt.push_back(std::sqrt(p.s - s_prev));
    ps.xs.push_back(p.x);
    s_prev = p.s;
  }
  return ps;
}

// Bridge increments toward an endpoint need the raw times as well.
struct BridgeSet {
  std::vector<double> times;
  std::vector<double> xs;
};

BridgeSet relevant_points_times(const Environment& env, double horizon) {
  BridgeSet bs;
  for (const auto& p : env.points) {
    if (!(p.s > 0.0 && p.s <= horizon)) continue;
    bs.times.push_back(p.s);
    bs.xs.push_back(p.x);
  }
  return bs;
}

EstimatorResult reduce_weights(const std::vector<double>& w) {
  EstimatorResult res;
  res.n = std::int64_t(w.size());
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= double(w.size());
  double ss = 0.0;
  for (double v : w) ss += (v - mean) * (v - mean);
  res.value = mean;
  res.stderr_ =
      w.size() > 1 ? std::sqrt(ss / (double(w.size()) * double(w.size() - 1)))
                   : 0.0;
  return res;
}

}  // namespace

EstimatorResult partition_Z(const Environment& env, const PolymerParams& p,
                            std::int64_t n_paths, RandomStream& stream,
                            bool antithetic) {
  p.validate();
  if (n_paths < 2) throw std::domain_error("partition_Z: n_paths must be >= 2");
  if (env.box.t_max < p.t)
    throw std::domain_error("partition_Z: environment does not cover [0, t]");
  const PointSet ps = relevant_points(env, p.t);
  const std::size_t m = ps.xs.size();
  const double half_r = 0.5 * p.r;
  const std::int64_t pairs = antithetic ? (n_paths + 1) / 2 : n_paths;
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(antithetic ? pairs : n_paths));
  std::vector<double> z(m);
  for (std::int64_t k = 0; k < pairs; ++k) {
    for (std::size_t i = 0; i < m; ++i) z[i] = stream.normal();
    double sum = 0.0;
    for (int sign = 0; sign < (antithetic ? 2 : 1); ++sign) {
      double b = 0.0;
      std::int64_t energy = 0;
      for (std::size_t i = 0; i < m; ++i) {
        b += ps.dt_sqrt[i] * (sign == 0 ? z[i] : -z[i]);
        if (std::fabs(ps.xs[i] - b) <= half_r) ++energy;
      }
      sum += std::exp(p.beta * double(energy));
    }
    weights.push_back(antithetic ? 0.5 * sum : sum);
  }
  EstimatorResult res = reduce_weights(weights);
  res.n = antithetic ? 2 * pairs : pairs;
  return res;
}

EstimatorResult renormalized_W(const Environment& env, const PolymerParams& p,
                               std::int64_t n_paths, RandomStream& stream,
                               bool antithetic) {
  EstimatorResult z = partition_Z(env, p, n_paths, stream, antithetic);
  const double scale = std::exp(-p.lambda() * p.nu * p.r * p.t);
  z.value *= scale;
  z.stderr_ *= scale;
  return z;
}

EstimatorResult p2p_W(const Environment& env, const PolymerParams& p,
                      const SpaceTimePoint& endpoint, std::int64_t n_paths,
                      RandomStream& stream, bool antithetic) {
  p.validate();
  if (endpoint.s != p.t)
    throw std::domain_error("p2p_W: endpoint time must equal params.t");
  if (n_paths < 2) throw std::domain_error("p2p_W: n_paths must be >= 2");
  const BridgeSet bs = relevant_points_times(env, p.t);
  const std::size_t m = bs.times.size();
  const double half_r = 0.5 * p.r;
  const std::int64_t pairs = antithetic ? (n_paths + 1) / 2 : n_paths;
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(pairs));
  std::vector<double> z(m);
  for (std::int64_t k = 0; k < pairs; ++k) {
    for (std::size_t i = 0; i < m; ++i) z[i] = stream.normal();
    double sum = 0.0;
    for (int sign = 0; sign < (antithetic ? 2 : 1); ++sign) {
      double b = 0.0, s_prev = 0.0;
      std::int64_t energy = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double ds = bs.times[i] - s_prev;
        const double rem = p.t - s_prev;
        const double mean = b + ds / rem * (endpoint.x - b);
        const double sd = std::sqrt(ds * (p.t - bs.times[i]) / rem);
        b = mean + sd * (sign == 0 ? z[i] : -z[i]);
        if (std::fabs(bs.xs[i] - b) <= half_r) ++energy;
        s_prev = bs.times[i];
      }
      sum += std::exp(p.beta * double(energy));
    }
    weights.push_back(antithetic ? 0.5 * sum : sum);
  }
  EstimatorResult res = reduce_weights(weights);
  res.n = antithetic ? 2 * pairs : pairs;
  const double scale = heat_kernel(p.t, endpoint.x) *
                       std::exp(-p.lambda() * p.nu * p.r * p.t);
  res.value *= scale;
  res.stderr_ *= scale;
  return res;
}

EstimatorResult shifted_p2p_W(const Environment& env, const PolymerParams& p,
                              const SpaceTimePoint& from,
                              const SpaceTimePoint& to, std::int64_t n_paths,
                              RandomStream& stream, bool antithetic) {
  if (!(from.s < to.s)) throw std::domain_error("shifted_p2p_W: need s < t");
  if (env.box.t_max < to.s)
    throw std::domain_error("shifted_p2p_W: environment does not cover [s, t]");
  Environment shifted = shift_environment(env, from.s, from.x, to.s - from.s);
  PolymerParams q = p;
  q.t = to.s - from.s;
  return p2p_W(shifted, q, SpaceTimePoint{q.t, to.x - from.x}, n_paths, stream,
               antithetic);
}

}  // namespace polysim

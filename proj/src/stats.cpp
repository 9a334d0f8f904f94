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

#include "polysim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "polysim/rng.hpp"

namespace polysim {

void SampleSet::validate() const {
  if (values.size() < 2) throw std::domain_error("SampleSet: need n >= 2");
  for (double v : values)
    if (std::isnan(v)) throw std::domain_error("SampleSet: NaN value");
  if (!inner_stderr.empty() && inner_stderr.size() != values.size())
    throw std::domain_error("SampleSet: inner stderr length mismatch");
}

EstimatorResult mean_stderr(std::span<const double> values) {
  if (values.size() < 2) throw std::domain_error("mean_stderr: need n >= 2");
  const double n = double(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n * (n - 1.0))), std::int64_t(values.size())};
}

double ks_two_sample(std::span<const double> a, std::span<const double> b,
                     std::size_t min_n) {
  if (a.size() < min_n || b.size() < min_n)
    throw std::domain_error("ks_two_sample: samples too small");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = double(sa.size()), nb = double(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::fabs(double(i) / na - double(j) / nb));
  }
  return d;
}

double ks_two_sample(const SampleSet& a, const SampleSet& b) {
  a.validate();
  b.validate();
  return ks_two_sample(a.values, b.values);
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ks_critical_value: alpha in (0,1)");
  const double c = std::sqrt(-std::log(0.5 * alpha) * 0.5);
  return c * std::sqrt(double(n + m) / (double(n) * double(m)));
}

MomentComparison moment_compare(const SampleSet& samples, double target, int p,
                                std::uint64_t seed, int n_resamples) {
  samples.validate();
  if (p < 1 || p > 4) throw std::domain_error("moment_compare: p in {1..4}");
  if (samples.values.size() < 100)
    throw std::domain_error("moment_compare: need n >= 100");
  const auto& v = samples.values;
  const std::size_t n = v.size();
  const auto raw_moment = [p](std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) {
      double t = x;
      for (int q = 1; q < p; ++q) t *= x;
      acc += t;
    }
    return acc / double(xs.size());
  };
  MomentComparison out;
  out.moment = raw_moment(v);
  RandomStream stream(seed, 0);
  std::vector<double> resample(n);
  double mean = 0.0, m2 = 0.0;
  for (int b = 0; b < n_resamples; ++b) {
    for (std::size_t i = 0; i < n; ++i)
      resample[i] = v[static_cast<std::size_t>(stream.next_u64() % n)];
    const double m = raw_moment(resample);
    const double delta = m - mean;
    mean += delta / double(b + 1);
    m2 += delta * (m - mean);
  }
  out.stderr_ = std::sqrt(m2 / double(n_resamples - 1));
  out.z = out.stderr_ > 0.0 ? (out.moment - target) / out.stderr_
                            : (out.moment == target ? 0.0 : INFINITY);
  return out;
}

TrendResult trend_test(std::span<const double> values) {
  if (values.size() < 3) throw std::domain_error("trend_test: need >= 3 points");
  std::int64_t concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[j] > values[i]) ++concordant;
      else if (values[j] < values[i]) ++discordant;
    }
  }
  const double pairs = 0.5 * double(values.size()) * double(values.size() - 1);
  TrendResult res;
  res.tau = double(concordant - discordant) / pairs;
  res.decreasing = res.tau <= -0.5;
  return res;
}

namespace {

// Regularized incomplete gamma, lower (series) and upper (continued
// fraction) branches.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_poisson_pvalue(std::span<const std::int64_t> counts,
                                 double mean) {
  if (counts.size() < 20)
    throw std::domain_error("chi_square_poisson_pvalue: too few observations");
  if (!(mean > 0.0))
    throw std::domain_error("chi_square_poisson_pvalue: mean must be > 0");
  std::int64_t max_count = 0;
  for (std::int64_t c : counts) max_count = std::max(max_count, c);
  const double n = double(counts.size());
  // Expected Poisson bin masses; the tail is folded into the last bin and
  // bins are merged upward until every expected count reaches 5.
  std::vector<double> expected(static_cast<std::size_t>(max_count) + 2, 0.0);
  double pmf = std::exp(-mean), cdf = 0.0;
  for (std::int64_t k = 0; k <= max_count; ++k) {
    expected[static_cast<std::size_t>(k)] = n * pmf;
    cdf += pmf;
    pmf *= mean / double(k + 1);
  }
  expected[static_cast<std::size_t>(max_count) + 1] = n * std::max(0.0, 1.0 - cdf);
  std::vector<double> observed(expected.size(), 0.0);
  for (std::int64_t c : counts) observed[static_cast<std::size_t>(c)] += 1.0;

  std::vector<double> obs_m, exp_m;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    acc_o += observed[k];
    acc_e += expected[k];
    const bool last = k + 1 == expected.size();
    if (acc_e >= 5.0 && !last) {
      obs_m.push_back(acc_o);
      exp_m.push_back(acc_e);
      acc_o = acc_e = 0.0;
    } else if (last) {
      if (exp_m.empty()) {
        obs_m.push_back(acc_o);
        exp_m.push_back(acc_e);
      } else {
        obs_m.back() += acc_o;
        exp_m.back() += acc_e;
      }
    }
  }
  if (obs_m.size() < 2) return 1.0;  // everything merged: no resolution
  double stat = 0.0;
  for (std::size_t k = 0; k < obs_m.size(); ++k) {
    const double diff = obs_m[k] - exp_m[k];
    stat += diff * diff / exp_m[k];
  }
  const double dof = double(obs_m.size() - 1);
  return gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace polysim

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

#ifndef POLYSIM_STATS_HPP
#define POLYSIM_STATS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polysim/types.hpp"

namespace polysim {

/// A labelled vector of samples, optionally carrying the inner Monte Carlo
/// standard error each sample was produced with.
struct SampleSet {
  std::vector<double> values;
  std::vector<double> inner_stderr;  // empty or same length as values
  std::string label;

  void validate() const;
};

/// Sample mean and its standard error (sample sd / sqrt(n)); n >= 2.
EstimatorResult mean_stderr(std::span<const double> values);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|; both n >= 50.
double ks_two_sample(const SampleSet& a, const SampleSet& b);
double ks_two_sample(std::span<const double> a, std::span<const double> b,
                     std::size_t min_n = 50);

/// Asymptotic two-sample critical value c(alpha) sqrt((n+m)/(n m)) with
/// c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

struct MomentComparison {
  double moment = 0.0;     // empirical p-th raw moment
  double stderr_ = 0.0;    // bootstrap standard error (seeded resamples)
  double z = 0.0;          // (moment - target) / stderr
};

/// Empirical p-th moment with bootstrap standard error (10^3 resamples)
/// and z-score against a target; p in {1,2,3,4}, n >= 100.
MomentComparison moment_compare(const SampleSet& samples, double target, int p,
                                std::uint64_t seed = 0x6d6f6d656e74ull,
                                int n_resamples = 1000);

struct TrendResult {
  double tau = 0.0;       // Kendall tau against the index
  bool decreasing = false;  // tau <= -0.5
};

/// Monotone-decrease verdict for values indexed by increasing t; >= 3 points.
TrendResult trend_test(std::span<const double> values);

/// Upper regularized incomplete gamma Q(a, x) (series / continued fraction).
double gamma_q(double a, double x);

/// Chi-square goodness of fit of integer counts against Poisson(mean) with
/// the mean known; tail bins are merged until every expected count is >= 5.
/// Returns the p-value.
double chi_square_poisson_pvalue(std::span<const std::int64_t> counts,
                                 double mean);

}  // namespace polysim

#endif  // POLYSIM_STATS_HPP

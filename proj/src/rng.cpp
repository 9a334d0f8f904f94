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

#include "polysim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace polysim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * c[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  k[0] += kPhiloxW0;
  k[1] += kPhiloxW1;
}

inline std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> c,
                                             std::array<std::uint32_t, 2> k) {
  for (int i = 0; i < 10; ++i) philox_round(c, k);
  return c;
}

inline double u01_from_u64(std::uint64_t v) {
  // 53 random bits, offset by half an ulp so the result is in (0,1).
  return (double(v >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream_index)
    : seed_(seed), substream_(substream_index) {
  // The key mixes seed and substream so that streams with distinct
  // substreams use unrelated Philox keys; the counter is a pure block index.
  const std::uint64_t k = splitmix64(seed ^ splitmix64(substream_index));
  key_ = {std::uint32_t(k), std::uint32_t(k >> 32)};
}

RandomStream RandomStream::child(std::uint64_t salt) const {
  const std::uint64_t sub =
      splitmix64(substream_ + 0x632BE59BD9B4E019ull) ^ splitmix64(~salt);
  return RandomStream(seed_, sub);
}

void RandomStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      std::uint32_t(block_), std::uint32_t(block_ >> 32),
      std::uint32_t(substream_), std::uint32_t(substream_ >> 32)};
  buf_ = philox10(ctr, key_);
  ++block_;
  buf_pos_ = 0;
}

std::uint32_t RandomStream::next_u32() {
  if (buf_pos_ >= 4) refill();
  return buf_[buf_pos_++];
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RandomStream::uniform() { return u01_from_u64(next_u64()); }

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

namespace {

// Ziggurat tables for the standard normal (Marsaglia-Tsang, 128 strips).
struct ZigguratTables {
  std::uint32_t kn[128];
  double wn[128];
  double fn[128];
  ZigguratTables() {
    const double m1 = 2147483648.0;
    double dn = 3.442619855899, tn = dn;
    const double vn = 9.91256303526217e-3;
    const double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = std::uint32_t((dn / q) * m1);
    kn[1] = 0;
    wn[0] = q / m1;
    wn[127] = dn / m1;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = std::uint32_t((dn / tn) * m1);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / m1;
    }
  }
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace

double RandomStream::normal() {
  const ZigguratTables& z = ziggurat();
  const double r_tail = 3.442619855899;
  for (;;) {
    const std::int32_t hz = std::int32_t(next_u32());
    const int iz = hz & 127;
    const std::uint32_t az =
        hz < 0 ? std::uint32_t(-std::int64_t(hz)) : std::uint32_t(hz);
    if (az < z.kn[iz]) return hz * z.wn[iz];
    if (iz == 0) {
      // tail beyond r: exact exponential-rejection sampling
      double x, y;
      do {
        x = -std::log(uniform()) / r_tail;
        y = -std::log(uniform());
      } while (y + y < x * x);
      return hz < 0 ? -(r_tail + x) : r_tail + x;
    }
    const double x = hz * z.wn[iz];
    if (z.fn[iz] + uniform() * (z.fn[iz - 1] - z.fn[iz]) <
        std::exp(-0.5 * x * x))
      return x;
  }
}

std::int64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 12.0) {
    // Knuth's product method.
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Hormann's PTRS transformed-rejection sampler.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return std::int64_t(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = kf * log_mean - mean - std::lgamma(kf + 1.0);
    if (lhs <= rhs) return std::int64_t(kf);
  }
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be > 0");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::exponential() { return -std::log(uniform()); }

std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                          std::uint64_t ctr_hi,
                                          std::uint64_t ctr_lo) {
  const std::array<std::uint32_t, 4> ctr = {
      std::uint32_t(ctr_lo), std::uint32_t(ctr_lo >> 32),
      std::uint32_t(ctr_hi), std::uint32_t(ctr_hi >> 32)};
  const std::array<std::uint32_t, 2> k = {std::uint32_t(key),
                                          std::uint32_t(key >> 32)};
  return philox10(ctr, k);
}

double philox_normal_at(std::uint64_t key, std::uint64_t ctr_hi,
                        std::uint64_t ctr_lo) {
  const auto b = philox_block(key, ctr_hi, ctr_lo);
  const double u1 = u01_from_u64((std::uint64_t(b[1]) << 32) | b[0]);
  const double u2 = u01_from_u64((std::uint64_t(b[3]) << 32) | b[2]);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must be in (0,1)");
  // Acklam's rational approximation.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement against the exact CDF.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) *
                   std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace polysim

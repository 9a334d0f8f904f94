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

#ifndef POLYSIM_RNG_HPP
#define POLYSIM_RNG_HPP

#include <array>
#include <cstdint>

namespace polysim {

/// SplitMix64 finalizer, used to derive keys and child substreams.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is fully determined by (seed, substream_index): identical pairs
/// produce identical output sequences, distinct substreams are statistically
/// independent.  Streams are small value types; moving them across workers is
/// safe and every draw is a pure function of (key, counter).
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0) {}
  RandomStream(std::uint64_t seed, std::uint64_t substream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream() const { return substream_; }

  /// Derived stream for nested replication (inner loops, per-task lanes).
  /// Children with distinct salts are independent of each other and of the
  /// parent (substream indices are hashed apart; collisions are negligible).
  RandomStream child(std::uint64_t salt) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();
  /// Uniform on (lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal (ziggurat).
  double normal();
  /// Poisson with the given mean (Knuth below 12, Hormann PTRS above).
  std::int64_t poisson(double mean);
  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the shape<1 boost).
  double gamma(double shape);
  /// Exponential with rate 1.
  double exponential();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t substream_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
};

/// Stateless access to one Philox block, used for streamed noise fields
/// where a value must be addressable by coordinates instead of draw order.
std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                          std::uint64_t ctr_hi,
                                          std::uint64_t ctr_lo);

/// Standard normal value addressed by (key, hi, lo); pure function.
double philox_normal_at(std::uint64_t key, std::uint64_t ctr_hi,
                        std::uint64_t ctr_lo);

/// Inverse of the standard normal CDF (Acklam's rational approximation
/// polished with one Halley step; relative error at machine precision).
double normal_quantile(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double z);

}  // namespace polysim

#endif  // POLYSIM_RNG_HPP

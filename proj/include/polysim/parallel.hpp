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

#ifndef POLYSIM_PARALLEL_HPP
#define POLYSIM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace polysim {

/// Run fn(0..n-1) on a transient pool of `threads` workers (0 = hardware
/// concurrency).  Tasks own their substreams and write to disjoint slots, so
/// results do not depend on the schedule; the first exception is rethrown.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

/// Hardware concurrency with a floor of 1.
int hardware_threads();

}  // namespace polysim

#endif  // POLYSIM_PARALLEL_HPP

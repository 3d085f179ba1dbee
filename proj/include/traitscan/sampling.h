// Copyright 2026 The Traitscan Authors.
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

// Seeded sampling helpers. The generator is std::mt19937_64, whose output
// sequence is fixed by the standard; the bounded and real-valued draws below
// avoid the implementation-defined standard distributions so that a seed
// reproduces the same sample on every platform.

#ifndef TRAITSCAN_SAMPLING_H_
#define TRAITSCAN_SAMPLING_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace traitscan {

using Rng = std::mt19937_64;

// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Reservoir sample (Algorithm R) of k indices out of [0, population),
// returned in ascending order. k is clamped to population.
inline std::vector<std::size_t> reservoir_sample(std::size_t population,
                                                 std::size_t k, Rng& rng) {
  if (k > population) k = population;
  std::vector<std::size_t> reservoir;
  reservoir.reserve(k);
  for (std::size_t i = 0; i < population; ++i) {
    if (i < k) {
      reservoir.push_back(i);
      continue;
    }
    const std::uint64_t j = uniform_below(rng, i + 1);
    if (j < k) reservoir[j] = i;
  }
  std::sort(reservoir.begin(), reservoir.end());
  return reservoir;
}

}  // namespace traitscan

#endif  // TRAITSCAN_SAMPLING_H_

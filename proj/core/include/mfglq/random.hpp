// Copyright 2026 The mfglq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based randomness: every draw is a pure function of a key tuple
// (seed, path, step), so paths can be simulated in any order or in parallel
// without changing a single bit of the result.

#ifndef MFGLQ_RANDOM_HPP_
#define MFGLQ_RANDOM_HPP_

#include <cstdint>
#include <limits>

namespace mfglq {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix64(mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) ^ a) ^ b) ^
         mix64(c + 0x2545f4914f6cdd1dULL);
}

// UniformRandomBitGenerator producing mix64(key + i) for i = 0, 1, ...
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  constexpr explicit CounterEngine(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  constexpr result_type operator()() {
    return mix64(key_ + 0x632be59bd9b4e019ULL * ++counter_);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace mfglq

#endif  // MFGLQ_RANDOM_HPP_

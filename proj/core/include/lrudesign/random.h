// Copyright 2026 The lrudesign Authors
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

#ifndef LRUDESIGN_RANDOM_H_
#define LRUDESIGN_RANDOM_H_

#include <cstdint>
#include <random>

namespace lrud {

// SplitMix64 step; used to expand user seeds.
std::uint64_t SplitMix64(std::uint64_t& state);

// std::mt19937_64 (fully specified by the standard) seeded through SplitMix64,
// with integer-only mappings to doubles and bounded integers so streams are
// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform01();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n), n > 0, by rejection.
  std::uint64_t Below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lrud

#endif  // LRUDESIGN_RANDOM_H_

// Copyright 2026 The Evoproof Authors.
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

#ifndef EVOPROOF_RNG_HPP_
#define EVOPROOF_RNG_HPP_

#include <cstdint>
#include <random>

namespace evoproof {

// Seed-determined random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the integer and real mappings below
// are written out by hand so every draw is reproducible across standard
// library implementations (std::uniform_*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // UniformInt[lo, hi], both ends inclusive. Rejection sampling, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // UniformInt[lo, hi), half-open.
  std::int64_t uniform_int_below(std::int64_t lo, std::int64_t hi) {
    return uniform_int(lo, hi - 1);
  }

  // UniformReal[0, 1): 53 high bits of one draw scaled by 2^-53.
  double uniform_real();

 private:
  std::mt19937_64 engine_;
};

}  // namespace evoproof

#endif  // EVOPROOF_RNG_HPP_

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

#ifndef EVOPROOF_POPULATION_HPP_
#define EVOPROOF_POPULATION_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "evoproof/genome.hpp"

namespace evoproof {

struct EvalOutcome;

// Chromosome plus its evaluation. `outcome` and `fitness` are set together.
struct Individual {
  Chromosome chromosome;
  std::shared_ptr<const EvalOutcome> outcome;
  std::optional<std::int64_t> fitness;

  bool evaluated() const { return outcome != nullptr; }
};

struct Population {
  std::vector<Individual> members;
  std::int64_t generation = 0;
};

}  // namespace evoproof

#endif  // EVOPROOF_POPULATION_HPP_

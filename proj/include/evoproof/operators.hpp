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

#ifndef EVOPROOF_OPERATORS_HPP_
#define EVOPROOF_OPERATORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evoproof/archive.hpp"
#include "evoproof/evaluation.hpp"
#include "evoproof/genome.hpp"
#include "evoproof/population.hpp"
#include "evoproof/rng.hpp"

namespace evoproof {

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Lengths from UniformInt[l_lower, l_upper], genes from UniformInt[0, t_max];
// per individual the length is drawn first, then genes left to right.
Population initialize(std::int64_t pop_size, std::int64_t l_lower,
                      std::int64_t l_upper, Gene t_max, Rng& rng);

// Descending fitness; ties go to the shorter chromosome, then to the earlier
// population position.
std::vector<const Individual*> rank(const Population& pop,
                                    TieBreak tie_break = TieBreak::shorter_first);

// Uniform over the top floor(pop_size / 2) ranks.
const Individual& select_parent(const std::vector<const Individual*>& ranked,
                                std::int64_t pop_size, Rng& rng);

// One-point crossover, cut drawn from UniformInt[1, min(len1, len2)]:
// p1[0, cut) followed by p2[cut, end).
Chromosome crossover(const Chromosome& p1, const Chromosome& p2, Rng& rng);
Chromosome crossover_at(const Chromosome& p1, const Chromosome& p2,
                        std::size_t cut);

// Rewrites one uniformly chosen position with a uniform gene.
Chromosome mutate(Chromosome c, Gene t_max, Rng& rng);

struct FirstProof {
  std::int64_t generation = 0;
  std::int64_t length = 0;
};

struct RunReport {
  EAConfig config;
  std::string theorem_id;
  std::string backend_id;
  std::string backend_version;
  std::size_t tactic_base_size = 0;
  std::vector<GenerationStats> generations;
  std::optional<FirstProof> first_proof;
  std::int64_t distinct_proofs = 0;
  bool finished = false;  // false when the run aborted
  std::string error;
  // Run-level settings echoed by the caller (input files, timeouts, ...).
  std::map<std::string, std::string> settings;
};

// Observer for a run. Nothing a sink does feeds back into the search.
class ReportSink {
 public:
  virtual ~ReportSink() = default;
  virtual void on_generation(const GenerationStats&) {}
  virtual void on_proof(const ProofRecord&) {}
};

// Complete members of an evaluated population as archive records, and the
// generation's statistics. `seen` accumulates distinct proofs across calls.
GenerationStats summarize_generation(const Population& pop,
                                     const TacticBase& base,
                                     const std::string& theorem_id,
                                     std::uint64_t seed, ProofArchive& seen,
                                     std::vector<ProofRecord>* complete = nullptr);

// Generational loop: initialize and evaluate (generation 0), then max_gen
// rounds of pop_size offspring built by two selections, crossover and
// mutation with probability mut_rat, each round fully replacing the previous
// population. Runs to max_gen regardless of proofs found.
RunReport evolve(const EAConfig& config, const TacticBase& base,
                 const TheoremStatement& statement, Backend& backend,
                 ReportSink& sink, unsigned workers = 1);

}  // namespace evoproof

#endif  // EVOPROOF_OPERATORS_HPP_

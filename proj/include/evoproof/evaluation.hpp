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

#ifndef EVOPROOF_EVALUATION_HPP_
#define EVOPROOF_EVALUATION_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "evoproof/genome.hpp"
#include "evoproof/population.hpp"

namespace evoproof {

enum class StepStatus { passed, failed, completion_signal };

enum class FailureKind { none, tactic_error, repeat_violation, timeout, backend_fault };

const char* to_string(StepStatus s);
const char* to_string(FailureKind f);

struct StepResult {
  std::size_t position = 0;  // index among the scored tactics
  StepStatus status = StepStatus::passed;
  std::string message;
};

// One sentence exchanged with a backend.
struct TranscriptEntry {
  std::string sent;
  std::string response;
  std::string classification;  // "passed", "failed", "completion_signal", "unscored"
};

// What a backend reports for one script. `steps` stops at the first failed or
// completion step; `qed_accepted` is set only when every tactic passed and the
// terminator was submitted.
struct ScriptResult {
  std::vector<StepResult> steps;
  std::optional<bool> qed_accepted;
  FailureKind failure = FailureKind::none;  // timeout / backend_fault detail
  std::string fault_message;
  std::vector<TranscriptEntry> transcript;
};

// Fatal backend condition (cannot start, cannot be reached). Aborts a run.
class BackendUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Abstract proof checker. Implementations must be stateless across scripts
// and safe to call from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  virtual std::string version() const = 0;
  // Runs declaration, "Proof.", "intros." unscored, then each tactic.
  virtual ScriptResult run_script(const TheoremStatement& statement,
                                  std::span<const std::string> tactics,
                                  bool record_transcript = false) = 0;
};

struct EvalOutcome {
  std::int64_t passed = 0;  // s
  bool complete = false;
  FailureKind failure = FailureKind::none;
  std::vector<StepResult> steps;
};

// First position p where genes[p-1], genes[p] break a repeat rule.
std::optional<std::size_t> check_repeat_rules(std::span<const Gene> genes,
                                              const TacticBase& base);

// Turns a backend result into an outcome. `submitted` is the number of tactics
// handed to the backend; `truncated` marks a repeat-rule cut at that point.
EvalOutcome score_script(const ScriptResult& result, std::size_t submitted,
                         bool truncated);

EvalOutcome evaluate(const Chromosome& c, const TacticBase& base,
                     const TheoremStatement& statement, Backend& backend);

std::int64_t assign_fitness(const EvalOutcome& outcome,
                            std::int64_t completion_base);

// Chromosome -> outcome memo. Safe for concurrent lookups and inserts;
// inserting an existing key keeps the first value.
class EvalCache {
 public:
  std::shared_ptr<const EvalOutcome> find(const Chromosome& c) const;
  std::shared_ptr<const EvalOutcome> insert(const Chromosome& c,
                                            std::shared_ptr<const EvalOutcome> o);
  std::size_t size() const;
  std::size_t backend_calls() const { return backend_calls_; }
  void count_call() { ++backend_calls_; }

 private:
  mutable std::mutex mu_;
  std::unordered_map<Chromosome, std::shared_ptr<const EvalOutcome>,
                     ChromosomeHash>
      map_;
  std::atomic<std::size_t> backend_calls_{0};
};

// Evaluates every member that lacks an outcome. Distinct uncached chromosomes
// are sent to the backend once each, fanned out over `workers` threads;
// results are attached by population position, so the outcome does not depend
// on evaluation order. Per-member faults stay in that member's outcome.
void evaluate_population(Population& pop, const TacticBase& base,
                         const TheoremStatement& statement, Backend& backend,
                         EvalCache& cache, std::int64_t completion_base,
                         unsigned workers = 1);

}  // namespace evoproof

#endif  // EVOPROOF_EVALUATION_HPP_

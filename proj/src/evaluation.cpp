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

#include "evoproof/evaluation.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <unordered_map>

namespace evoproof {

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::passed: return "passed";
    case StepStatus::failed: return "failed";
    case StepStatus::completion_signal: return "completion_signal";
  }
  return "?";
}

const char* to_string(FailureKind f) {
  switch (f) {
    case FailureKind::none: return "none";
    case FailureKind::tactic_error: return "tactic_error";
    case FailureKind::repeat_violation: return "repeat_violation";
    case FailureKind::timeout: return "timeout";
    case FailureKind::backend_fault: return "backend_fault";
  }
  return "?";
}

std::optional<std::size_t> check_repeat_rules(std::span<const Gene> genes,
                                              const TacticBase& base) {
  for (std::size_t p = 1; p < genes.size(); ++p)
    if (base.forbids_adjacent(genes[p - 1], genes[p])) return p;
  return std::nullopt;
}

EvalOutcome score_script(const ScriptResult& result, std::size_t submitted,
                         bool truncated) {
  EvalOutcome out;
  out.steps = result.steps;
  bool stopped = false;
  for (const auto& step : result.steps) {
    if (step.status == StepStatus::passed) {
      ++out.passed;
      continue;
    }
    if (step.status == StepStatus::completion_signal) {
      out.complete = true;
    } else {
      out.failure = result.failure == FailureKind::timeout
                        ? FailureKind::timeout
                        : FailureKind::tactic_error;
    }
    stopped = true;
    break;
  }
  if (result.failure == FailureKind::backend_fault) {
    out.complete = false;
    out.failure = FailureKind::backend_fault;
    return out;
  }
  if (stopped) return out;
  if (result.failure == FailureKind::timeout) {
    out.failure = FailureKind::timeout;
    return out;
  }
  if (static_cast<std::size_t>(out.passed) == submitted &&
      result.qed_accepted.value_or(false)) {
    out.complete = true;
  } else if (truncated) {
    out.failure = FailureKind::repeat_violation;
  }
  return out;
}

EvalOutcome evaluate(const Chromosome& c, const TacticBase& base,
                     const TheoremStatement& statement, Backend& backend) {
  const auto tactics = decode(c.genes, base);
  const auto violation = check_repeat_rules(c.genes, base);
  const std::size_t submitted = violation.value_or(tactics.size());
  const auto result = backend.run_script(
      statement, std::span<const std::string>(tactics).first(submitted));
  return score_script(result, submitted, violation.has_value());
}

std::int64_t assign_fitness(const EvalOutcome& outcome,
                            std::int64_t completion_base) {
  return outcome.complete ? completion_base - outcome.passed : outcome.passed;
}

std::shared_ptr<const EvalOutcome> EvalCache::find(const Chromosome& c) const {
  std::lock_guard lock(mu_);
  const auto it = map_.find(c);
  return it == map_.end() ? nullptr : it->second;
}

std::shared_ptr<const EvalOutcome> EvalCache::insert(
    const Chromosome& c, std::shared_ptr<const EvalOutcome> o) {
  std::lock_guard lock(mu_);
  return map_.try_emplace(c, std::move(o)).first->second;
}

std::size_t EvalCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

void evaluate_population(Population& pop, const TacticBase& base,
                         const TheoremStatement& statement, Backend& backend,
                         EvalCache& cache, std::int64_t completion_base,
                         unsigned workers) {
  // Distinct chromosomes still needing a backend call, in population order.
  std::vector<const Chromosome*> todo;
  std::unordered_map<Chromosome, std::size_t, ChromosomeHash> slot;
  for (const auto& m : pop.members) {
    if (m.evaluated() || cache.find(m.chromosome)) continue;
    if (slot.try_emplace(m.chromosome, todo.size()).second)
      todo.push_back(&m.chromosome);
  }

  std::vector<std::shared_ptr<const EvalOutcome>> results(todo.size());
  auto run_one = [&](std::size_t i) {
    EvalOutcome o;
    try {
      o = evaluate(*todo[i], base, statement, backend);
    } catch (const BackendUnavailable&) {
      throw;
    } catch (const std::exception& e) {
      o.failure = FailureKind::backend_fault;
    }
    cache.count_call();
    results[i] = std::make_shared<const EvalOutcome>(std::move(o));
  };

  if (workers <= 1 || todo.size() < 2) {
    for (std::size_t i = 0; i < todo.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mu;
    std::vector<std::jthread> pool;
    const unsigned n = std::min<std::size_t>(workers, todo.size());
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < todo.size();) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(fatal_mu);
            if (!fatal) fatal = std::current_exception();
            next = todo.size();
          }
        }
      });
    }
    pool.clear();
    if (fatal) std::rethrow_exception(fatal);
  }

  for (std::size_t i = 0; i < todo.size(); ++i)
    cache.insert(*todo[i], results[i]);
  for (auto& m : pop.members) {
    if (m.evaluated()) continue;
    m.outcome = cache.find(m.chromosome);
    m.fitness = assign_fitness(*m.outcome, completion_base);
  }
}

}  // namespace evoproof

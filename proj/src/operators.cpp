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

#include "evoproof/operators.hpp"

#include <algorithm>
#include <numeric>

namespace evoproof {

Population initialize(std::int64_t pop_size, std::int64_t l_lower,
                      std::int64_t l_upper, Gene t_max, Rng& rng) {
  Population pop;
  pop.members.reserve(static_cast<std::size_t>(pop_size));
  for (std::int64_t i = 0; i < pop_size; ++i) {
    Individual ind;
    const auto len = rng.uniform_int(l_lower, l_upper);
    ind.chromosome.genes.reserve(static_cast<std::size_t>(len));
    for (std::int64_t j = 0; j < len; ++j)
      ind.chromosome.genes.push_back(static_cast<Gene>(rng.uniform_int(0, t_max)));
    pop.members.push_back(std::move(ind));
  }
  return pop;
}

std::vector<const Individual*> rank(const Population& pop, TieBreak tie_break) {
  std::vector<const Individual*> out;
  out.reserve(pop.members.size());
  for (const auto& m : pop.members) {
    if (!m.fitness) throw ContractViolation("rank: unevaluated member");
    out.push_back(&m);
  }
  std::stable_sort(out.begin(), out.end(), [tie_break](const Individual* a, const Individual* b) {
    if (*a->fitness != *b->fitness) return *a->fitness > *b->fitness;
    return tie_break == TieBreak::shorter_first &&
           a->chromosome.length() < b->chromosome.length();
  });
  return out;
}

const Individual& select_parent(const std::vector<const Individual*>& ranked,
                                std::int64_t pop_size, Rng& rng) {
  const auto i = rng.uniform_int_below(0, pop_size / 2);
  return *ranked.at(static_cast<std::size_t>(i));
}

Chromosome crossover_at(const Chromosome& p1, const Chromosome& p2,
                        std::size_t cut) {
  Chromosome child;
  child.genes.reserve(p2.length());
  child.genes.assign(p1.genes.begin(), p1.genes.begin() + cut);
  child.genes.insert(child.genes.end(), p2.genes.begin() + cut, p2.genes.end());
  return child;
}

Chromosome crossover(const Chromosome& p1, const Chromosome& p2, Rng& rng) {
  const auto shorter = std::min(p1.length(), p2.length());
  const auto cut = rng.uniform_int(1, static_cast<std::int64_t>(shorter));
  return crossover_at(p1, p2, static_cast<std::size_t>(cut));
}

Chromosome mutate(Chromosome c, Gene t_max, Rng& rng) {
  const auto pos = rng.uniform_int(0, static_cast<std::int64_t>(c.length()) - 1);
  c.genes[static_cast<std::size_t>(pos)] = static_cast<Gene>(rng.uniform_int(0, t_max));
  return c;
}

GenerationStats summarize_generation(const Population& pop,
                                     const TacticBase& base,
                                     const std::string& theorem_id,
                                     std::uint64_t seed, ProofArchive& seen,
                                     std::vector<ProofRecord>* complete) {
  GenerationStats st;
  st.generation = pop.generation;
  const auto before = static_cast<std::int64_t>(seen.size());
  double sum = 0.0;
  bool first = true;
  for (const auto& m : pop.members) {
    if (!m.fitness) throw ContractViolation("summarize: unevaluated member");
    const auto f = *m.fitness;
    st.best_fitness = first ? f : std::max(st.best_fitness, f);
    first = false;
    sum += static_cast<double>(f);
    if (!m.outcome->complete) continue;
    ++st.complete_count;
    ProofRecord rec;
    rec.theorem_id = theorem_id;
    rec.length = m.outcome->passed;
    rec.genes.assign(m.chromosome.genes.begin(),
                     m.chromosome.genes.begin() + rec.length);
    rec.tactics = decode(rec.genes, base);
    rec.generation = pop.generation;
    rec.seed = seed;
    rec.verified = true;
    seen.record(rec);
    if (complete) complete->push_back(std::move(rec));
  }
  if (!pop.members.empty()) sum /= static_cast<double>(pop.members.size());
  st.mean_fitness = sum;
  st.distinct_complete = static_cast<std::int64_t>(seen.size());
  st.new_distinct = st.distinct_complete - before;
  return st;
}

namespace {

void check_boundary(const Population& pop, const EAConfig& cfg, Gene t_max) {
  if (static_cast<std::int64_t>(pop.members.size()) != cfg.pop_size)
    throw ContractViolation("population size drifted");
  for (const auto& m : pop.members) {
    const auto len = static_cast<std::int64_t>(m.chromosome.length());
    if (len < cfg.l_lower || len > cfg.l_upper)
      throw ContractViolation("chromosome length left [len-min, len-max]");
    for (Gene g : m.chromosome.genes)
      if (g > t_max) throw ContractViolation("gene out of range");
  }
}

}  // namespace

RunReport evolve(const EAConfig& config, const TacticBase& base,
                 const TheoremStatement& statement, Backend& backend,
                 ReportSink& sink, unsigned workers) {
  validate_config(config);
  RunReport report;
  report.config = config;
  report.theorem_id = statement.id;
  report.backend_id = backend.id();
  report.backend_version = backend.version();
  report.tactic_base_size = base.size();

  Rng rng(config.seed);
  EvalCache cache;
  ProofArchive seen;

  auto sweep = [&](Population& pop) {
    check_boundary(pop, config, base.t_max());
    evaluate_population(pop, base, statement, backend, cache,
                        config.completion_base, workers);
    std::vector<ProofRecord> found;
    const auto stats =
        summarize_generation(pop, base, statement.id, config.seed, seen, &found);
    for (const auto& rec : found) {
      if (!report.first_proof)
        report.first_proof = FirstProof{rec.generation, rec.length};
      sink.on_proof(rec);
    }
    report.generations.push_back(stats);
    report.distinct_proofs = stats.distinct_complete;
    sink.on_generation(stats);
  };

  try {
    Population pop = initialize(config.pop_size, config.l_lower, config.l_upper,
                                base.t_max(), rng);
    pop.generation = 0;
    sweep(pop);
    for (std::int64_t t = 0; t < config.max_gen;) {
      const auto ranked = rank(pop, config.tie_break);
      Population next;
      next.generation = t + 1;
      next.members.reserve(pop.members.size());
      for (std::int64_t i = 0; i < config.pop_size; ++i) {
        const auto& p1 = select_parent(ranked, config.pop_size, rng);
        const auto& p2 = select_parent(ranked, config.pop_size, rng);
        Chromosome c = crossover(p1.chromosome, p2.chromosome, rng);
        if (rng.uniform_real() <= config.mut_rat) c = mutate(std::move(c), base.t_max(), rng);
        next.members.push_back(Individual{std::move(c), nullptr, std::nullopt});
      }
      pop = std::move(next);
      sweep(pop);
      t = pop.generation;
    }
    report.finished = true;
  } catch (const BackendUnavailable& e) {
    report.finished = false;
    report.error = e.what();
  }
  return report;
}

}  // namespace evoproof

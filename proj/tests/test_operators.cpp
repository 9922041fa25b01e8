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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "evoproof/operators.hpp"
#include "evoproof/report_io.hpp"
#include "evoproof/toy.hpp"
#include "scripted_backend.hpp"

using namespace evoproof;
using evoproof::testing::make_result;
using evoproof::testing::ScriptedBackend;

namespace {

Individual scored(std::vector<Gene> genes, std::int64_t fitness) {
  return Individual{Chromosome{std::move(genes)}, nullptr, fitness};
}

TacticBase toy_base() {
  return load_tactic_base_file(std::string(EVOPROOF_DATA_DIR) + "/toy/tactic_base.txt");
}

TheoremStatement toy_theorem(const char* file) {
  return load_theorem_file(std::string(EVOPROOF_DATA_DIR) + "/toy/suite/" + file);
}

class Collect : public ReportSink {
 public:
  void on_generation(const GenerationStats& s) override { gens.push_back(s); }
  void on_proof(const ProofRecord& r) override { proofs.push_back(r); }
  std::vector<GenerationStats> gens;
  std::vector<ProofRecord> proofs;
};

}  // namespace

TEST_CASE("crossover worked example") {
  const Chromosome a{{5, 0, 1, 6}};
  const Chromosome b{{1, 5, 5, 7, 3, 6, 4}};
  CHECK(crossover_at(a, b, 2) == Chromosome{{5, 0, 5, 7, 3, 6, 4}});
  CHECK(crossover_at(a, b, 4) == Chromosome{{5, 0, 1, 6, 3, 6, 4}});
  CHECK(crossover_at(b, a, 1) == Chromosome{{1, 0, 1, 6}});
}

TEST_CASE("crossover keeps the second parent's length and prefix/suffix origin") {
  Rng rng(1);
  for (int trial = 0; trial < 20000; ++trial) {
    auto p1 = initialize(1, 4, 15, 152, rng).members[0].chromosome;
    auto p2 = initialize(1, 4, 15, 152, rng).members[0].chromosome;
    const auto c = crossover(p1, p2, rng);
    REQUIRE(c.length() == p2.length());
    // Some cut in [1, min] must explain the child.
    bool explained = false;
    for (std::size_t cut = 1; cut <= std::min(p1.length(), p2.length()); ++cut)
      explained |= crossover_at(p1, p2, cut) == c;
    REQUIRE(explained);
  }
}

TEST_CASE("mutation changes at most one gene") {
  Rng rng(2);
  for (int trial = 0; trial < 20000; ++trial) {
    const auto c = initialize(1, 4, 15, 152, rng).members[0].chromosome;
    const auto m = mutate(c, 152, rng);
    REQUIRE(m.length() == c.length());
    int diff = 0;
    for (std::size_t i = 0; i < c.length(); ++i) diff += c.genes[i] != m.genes[i];
    REQUIRE(diff <= 1);
    for (Gene g : m.genes) REQUIRE(g <= 152);
  }
}

TEST_CASE("mutation position is uniform") {
  Rng rng(3);
  const Chromosome zeros{std::vector<Gene>(10, 0)};
  std::array<int, 10> hits{};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const auto m = mutate(zeros, 1000000, rng);
    for (std::size_t p = 0; p < 10; ++p)
      if (m.genes[p] != 0) ++hits[p];
  }
  for (int h : hits) CHECK(std::abs(h / double(trials) - 0.1) < 0.01);
}

TEST_CASE("initial lengths are uniform over the range") {
  Rng rng(4);
  const auto pop = initialize(60000, 4, 15, 152, rng);
  std::array<double, 12> counts{};
  for (const auto& m : pop.members) {
    REQUIRE(m.chromosome.length() >= 4);
    REQUIRE(m.chromosome.length() <= 15);
    ++counts[m.chromosome.length() - 4];
  }
  const double expected = 60000.0 / 12;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 31.26);  // 11 degrees of freedom, p = 0.001
}

TEST_CASE("selection draws uniformly from the top half") {
  Population pop;
  for (int i = 0; i < 100; ++i) pop.members.push_back(scored({Gene(i)}, 100 - i));
  const auto ranked = rank(pop);
  Rng rng(5);
  std::array<int, 100> hits{};
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) {
    const auto& p = select_parent(ranked, 100, rng);
    ++hits[p.chromosome.genes[0]];
  }
  for (int r = 0; r < 50; ++r) CHECK(std::abs(hits[r] / double(trials) - 0.02) < 0.005);
  for (int r = 50; r < 100; ++r) CHECK(hits[r] == 0);
}

TEST_CASE("odd population selects from floor(pop/2)") {
  Population pop;
  for (int i = 0; i < 5; ++i) pop.members.push_back(scored({Gene(i)}, 10 - i));
  const auto ranked = rank(pop);
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) CHECK(select_parent(ranked, 5, rng).chromosome.genes[0] < 2);
}

TEST_CASE("ranking ties") {
  Population pop;
  pop.members.push_back(scored({1, 1, 1}, 3));
  pop.members.push_back(scored({2, 2}, 3));
  pop.members.push_back(scored({3}, 7));
  pop.members.push_back(scored({4, 4}, 3));
  const auto shorter = rank(pop, TieBreak::shorter_first);
  CHECK(shorter[0]->chromosome.genes[0] == 3);
  CHECK(shorter[1]->chromosome.genes[0] == 2);
  CHECK(shorter[2]->chromosome.genes[0] == 4);
  CHECK(shorter[3]->chromosome.genes[0] == 1);
  const auto stable = rank(pop, TieBreak::stable);
  CHECK(stable[1]->chromosome.genes[0] == 1);
  CHECK(stable[2]->chromosome.genes[0] == 2);

  pop.members.push_back(Individual{Chromosome{{9}}, nullptr, std::nullopt});
  CHECK_THROWS_AS(rank(pop), ContractViolation);
}

TEST_CASE("one offspring generation reports two rows") {
  EAConfig cfg;
  cfg.pop_size = 20;
  cfg.max_gen = 1;
  cfg.seed = 3;
  toy::ToyBackend be;
  Collect sink;
  const auto r = evolve(cfg, toy_base(), toy_theorem("04_and_intro.thm"), be, sink);
  CHECK(r.finished);
  REQUIRE(r.generations.size() == 2);
  CHECK(r.generations[0].generation == 0);
  CHECK(r.generations[1].generation == 1);
  CHECK(sink.gens == r.generations);
}

TEST_CASE("same seed, same run") {
  EAConfig cfg;
  cfg.pop_size = 60;
  cfg.max_gen = 8;
  cfg.seed = 7;
  toy::ToyBackend be;
  Collect s1, s2, s3;
  const auto base = toy_base();
  const auto st = toy_theorem("08_imp_trans.thm");
  const auto a = evolve(cfg, base, st, be, s1, 1);
  const auto b = evolve(cfg, base, st, be, s2, 4);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(s1.proofs == s2.proofs);
  cfg.seed = 8;
  const auto c = evolve(cfg, base, st, be, s3, 1);
  CHECK(report_to_json(a) != report_to_json(c));
}

TEST_CASE("distinct counts are cumulative and match proof callbacks") {
  EAConfig cfg;
  cfg.pop_size = 100;
  cfg.max_gen = 10;
  cfg.seed = 2;
  toy::ToyBackend be;
  Collect sink;
  const auto r = evolve(cfg, toy_base(), toy_theorem("04_and_intro.thm"), be, sink);
  ProofArchive archive;
  for (const auto& p : sink.proofs) archive.record(p);
  std::int64_t prev = 0;
  for (const auto& g : r.generations) {
    CHECK(g.distinct_complete >= prev);
    CHECK(g.new_distinct == g.distinct_complete - prev);
    CHECK(g.complete_count <= cfg.pop_size);
    prev = g.distinct_complete;
  }
  CHECK(static_cast<std::size_t>(r.distinct_proofs) == archive.size());
  if (r.first_proof) CHECK(r.first_proof->generation == sink.proofs.front().generation);
  for (const auto& p : archive.records()) CHECK(p.length == static_cast<std::int64_t>(p.genes.size()));
}

TEST_CASE("backend loss aborts the run with a partial report") {
  EAConfig cfg;
  cfg.pop_size = 10;
  cfg.max_gen = 5;
  int budget = 25;
  ScriptedBackend be([&](const auto& t) -> ScriptResult {
    if (--budget < 0) throw BackendUnavailable("coqtop exited");
    return make_result(t.size() / 2, StepStatus::failed, std::nullopt);
  });
  Collect sink;
  const auto r = evolve(cfg, toy_base(), toy_theorem("04_and_intro.thm"), be, sink);
  CHECK_FALSE(r.finished);
  CHECK(r.error.find("coqtop exited") != std::string::npos);
  CHECK(r.generations.size() < 6);
}

TEST_CASE("invalid configurations are refused before any evaluation") {
  EAConfig cfg;
  cfg.l_lower = 9;
  cfg.l_upper = 3;
  ScriptedBackend be([](const auto& t) { return make_result(t.size(), std::nullopt, false); });
  Collect sink;
  CHECK_THROWS_AS(evolve(cfg, toy_base(), toy_theorem("04_and_intro.thm"), be, sink),
                  ConfigError);
  CHECK(be.calls == 0);
}

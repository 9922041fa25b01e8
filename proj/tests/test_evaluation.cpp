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

#include <stdexcept>

#include "evoproof/evaluation.hpp"
#include "evoproof/operators.hpp"
#include "evoproof/rng.hpp"
#include "evoproof/toy.hpp"
#include "scripted_backend.hpp"

using namespace evoproof;
using evoproof::testing::make_result;
using evoproof::testing::ScriptedBackend;

namespace {

TacticBase numbered_base(int n) {
  std::string src;
  for (int i = 0; i < n; ++i) src += "t" + std::to_string(i) + "\n";
  return load_tactic_base(src);
}

const TheoremStatement kStatement{"goal", {}, "Theorem goal : A -> A."};

Chromosome of_length(std::size_t n) {
  Chromosome c;
  for (std::size_t i = 0; i < n; ++i) c.genes.push_back(static_cast<Gene>(i % 20));
  return c;
}

}  // namespace

TEST_CASE("seven passing tactics and an accepted Qed") {
  ScriptedBackend be([](const auto& t) { return make_result(t.size(), std::nullopt, true); });
  const auto o = evaluate(of_length(7), numbered_base(20), kStatement, be);
  CHECK(o.passed == 7);
  CHECK(o.complete);
  CHECK(o.failure == FailureKind::none);
  CHECK(assign_fitness(o, 1000) == 993);
}

TEST_CASE("third tactic fails in a ten-tactic script") {
  ScriptedBackend be([](const auto&) { return make_result(3, StepStatus::failed, std::nullopt); });
  const auto o = evaluate(of_length(10), numbered_base(20), kStatement, be);
  CHECK(o.passed == 3);
  CHECK_FALSE(o.complete);
  CHECK(o.failure == FailureKind::tactic_error);
  CHECK(assign_fitness(o, 1000) == 3);
}

TEST_CASE("completion signal at the sixth tactic") {
  ScriptedBackend be([](const auto&) {
    return make_result(5, StepStatus::completion_signal, std::nullopt);
  });
  const auto o = evaluate(of_length(9), numbered_base(20), kStatement, be);
  CHECK(o.passed == 5);
  CHECK(o.complete);
  CHECK(assign_fitness(o, 1000) == 995);
}

TEST_CASE("all tactics pass but Qed is rejected") {
  ScriptedBackend be([](const auto& t) { return make_result(t.size(), std::nullopt, false); });
  const auto o = evaluate(of_length(4), numbered_base(20), kStatement, be);
  CHECK(o.passed == 4);
  CHECK_FALSE(o.complete);
  CHECK(o.failure == FailureKind::none);
  CHECK(assign_fitness(o, 1000) == 4);
}

TEST_CASE("repeat violation submits only the prefix") {
  const auto base = load_tactic_base("simpl\tnorepeat\nauto\n");
  std::vector<std::size_t> seen;
  bool qed = false;
  ScriptedBackend be([&](const auto& t) {
    seen.push_back(t.size());
    return make_result(t.size(), std::nullopt, qed);
  });
  auto o = evaluate(Chromosome{{1, 0, 0, 1}}, base, kStatement, be);
  CHECK(seen.back() == 2);
  CHECK(o.passed == 2);
  CHECK(o.failure == FailureKind::repeat_violation);
  CHECK_FALSE(o.complete);

  qed = true;
  o = evaluate(Chromosome{{1, 0, 0, 1}}, base, kStatement, be);
  CHECK(o.complete);
  CHECK(o.passed == 2);

  CHECK(check_repeat_rules(std::vector<Gene>{0, 1, 0}, base) == std::nullopt);
  CHECK(check_repeat_rules(std::vector<Gene>{0, 0}, base) == 1u);
}

TEST_CASE("pair exclusions count in either order") {
  const auto base = load_tactic_base("a\texcl=1\nb\nc\n");
  CHECK(check_repeat_rules(std::vector<Gene>{2, 1, 0}, base) == 2u);
  CHECK(check_repeat_rules(std::vector<Gene>{0, 1}, base) == 1u);
  CHECK(check_repeat_rules(std::vector<Gene>{0, 2, 1}, base) == std::nullopt);
}

TEST_CASE("timeouts and faults") {
  auto timed = make_result(2, StepStatus::failed, std::nullopt);
  timed.failure = FailureKind::timeout;
  auto o = score_script(timed, 5, false);
  CHECK(o.passed == 2);
  CHECK(o.failure == FailureKind::timeout);

  auto fault = make_result(5, std::nullopt, true);
  fault.failure = FailureKind::backend_fault;
  o = score_script(fault, 5, false);
  CHECK_FALSE(o.complete);
  CHECK(o.failure == FailureKind::backend_fault);
}

TEST_CASE("cache means one backend call per distinct chromosome") {
  ScriptedBackend be([](const auto& t) { return make_result(t.size(), std::nullopt, false); });
  const auto base = numbered_base(20);
  Population pop;
  for (int i = 0; i < 10; ++i) pop.members.push_back({of_length(5), nullptr, std::nullopt});
  pop.members.push_back({of_length(6), nullptr, std::nullopt});
  EvalCache cache;
  evaluate_population(pop, base, kStatement, be, cache, 1000, 4);
  CHECK(be.calls == 2);
  CHECK(cache.backend_calls() == 2);
  CHECK(pop.members[0].outcome == pop.members[9].outcome);

  Population again;
  again.members.push_back({of_length(5), nullptr, std::nullopt});
  evaluate_population(again, base, kStatement, be, cache, 1000, 4);
  CHECK(be.calls == 2);
  CHECK(again.members[0].fitness == 5);
}

TEST_CASE("parallel evaluation matches sequential evaluation") {
  const auto base = load_tactic_base_file(std::string(EVOPROOF_DATA_DIR) + "/toy/tactic_base.txt");
  const auto st = load_theorem_file(std::string(EVOPROOF_DATA_DIR) + "/toy/suite/09_and_or_mix.thm");
  Rng rng(99);
  const auto seed_pop = initialize(400, 1, 6, base.t_max(), rng);
  toy::ToyBackend toy;
  auto a = seed_pop, b = seed_pop;
  EvalCache ca, cb;
  evaluate_population(a, base, st, toy, ca, 1000, 1);
  evaluate_population(b, base, st, toy, cb, 1000, 8);
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    CHECK(a.members[i].fitness == b.members[i].fitness);
    CHECK(a.members[i].outcome->failure == b.members[i].outcome->failure);
  }
  CHECK(ca.backend_calls() == cb.backend_calls());
}

TEST_CASE("one slow or faulty individual does not affect the others") {
  const auto base = numbered_base(20);
  ScriptedBackend be([](const auto& t) {
    if (t.size() == 3) {
      auto r = make_result(1, StepStatus::failed, std::nullopt);
      r.failure = FailureKind::timeout;
      return r;
    }
    if (t.size() == 4) throw std::runtime_error("pipe closed");
    return make_result(t.size(), std::nullopt, true);
  });
  Population pop;
  for (std::size_t n : {2, 3, 4, 5}) pop.members.push_back({of_length(n), nullptr, std::nullopt});
  EvalCache cache;
  evaluate_population(pop, base, kStatement, be, cache, 1000, 4);
  CHECK(pop.members[0].fitness == 998);
  CHECK(pop.members[1].outcome->failure == FailureKind::timeout);
  CHECK(pop.members[1].fitness == 1);
  CHECK(pop.members[2].outcome->failure == FailureKind::backend_fault);
  CHECK(pop.members[2].fitness == 0);
  CHECK(pop.members[3].fitness == 995);
}

TEST_CASE("an unavailable backend aborts evaluation") {
  const auto base = numbered_base(20);
  for (unsigned workers : {1u, 4u}) {
    ScriptedBackend be([](const auto& t) -> ScriptResult {
      if (t.size() == 3) throw BackendUnavailable("coqtop vanished");
      return make_result(t.size(), std::nullopt, false);
    });
    Population pop;
    for (std::size_t n : {2, 3, 4, 5, 6}) pop.members.push_back({of_length(n), nullptr, std::nullopt});
    EvalCache cache;
    CHECK_THROWS_AS(evaluate_population(pop, base, kStatement, be, cache, 1000, workers),
                    BackendUnavailable);
  }
}

TEST_CASE("fitness separates complete from incomplete") {
  // Any complete individual outranks any incomplete one when the base exceeds len-max.
  for (std::int64_t s = 0; s <= 15; ++s) {
    EvalOutcome done{s, true, FailureKind::none, {}};
    for (std::int64_t t = 0; t <= 15; ++t) {
      EvalOutcome partial{t, false, FailureKind::tactic_error, {}};
      CHECK(assign_fitness(done, 1000) > assign_fitness(partial, 1000));
    }
  }
}

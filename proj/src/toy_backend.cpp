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

#include "evoproof/toy.hpp"

namespace evoproof::toy {

namespace {

std::string describe(const GoalState& s) {
  if (s.closed()) return "No more subgoals.";
  return std::to_string(s.subgoals.size()) +
         (s.subgoals.size() == 1 ? " subgoal: " : " subgoals: ") +
         s.subgoals.front().target.to_string();
}

}  // namespace

ScriptResult ToyBackend::run_script(const TheoremStatement& statement,
                                    std::span<const std::string> tactics,
                                    bool record_transcript) {
  ScriptResult r;
  auto note = [&](std::string sent, std::string response, std::string cls) {
    if (record_transcript)
      r.transcript.push_back({std::move(sent), std::move(response), std::move(cls)});
  };

  std::optional<GoalState> state;
  try {
    state = GoalState::initial(parse_declaration(statement.declaration));
  } catch (const ParseError& e) {
    r.failure = FailureKind::backend_fault;
    r.fault_message = std::string("cannot parse statement: ") + e.what();
    note(statement.declaration, "Error: " + std::string(e.what()), "unscored");
    return r;
  }
  note(statement.declaration, describe(*state), "unscored");
  note("Proof.", "", "unscored");
  state = apply_tactic(*state, ToyTactic{ToyTactic::Kind::intros, {}});
  note("intros.", describe(*state), "unscored");

  for (std::size_t i = 0; i < tactics.size(); ++i) {
    const std::string sent = tactics[i] + ".";
    if (state->closed()) {
      const std::string msg = "Error: No such unproven subgoal.";
      r.steps.push_back({i, StepStatus::completion_signal, msg});
      note(sent, msg, "completion_signal");
      return r;
    }
    const auto tactic = parse_tactic(tactics[i]);
    std::optional<GoalState> next;
    if (tactic) next = apply_tactic(*state, *tactic);
    if (!next) {
      const std::string msg = tactic ? "Error: " + tactics[i] + " is not applicable."
                                     : "Error: unknown tactic " + tactics[i] + ".";
      r.steps.push_back({i, StepStatus::failed, msg});
      note(sent, msg, "failed");
      return r;
    }
    state = std::move(next);
    r.steps.push_back({i, StepStatus::passed, describe(*state)});
    note(sent, describe(*state), "passed");
  }
  r.qed_accepted = state->closed();
  note("Qed.", *r.qed_accepted ? statement.id + " is defined" :
                                 "Error: Attempt to save an incomplete proof",
       "unscored");
  return r;
}

}  // namespace evoproof::toy

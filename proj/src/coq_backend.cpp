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

#include "evoproof/coq.hpp"

namespace evoproof::coq {

namespace {

StepStatus to_step(Classification c) {
  switch (c) {
    case Classification::passed: return StepStatus::passed;
    case Classification::failed: return StepStatus::failed;
    case Classification::completion_signal: return StepStatus::completion_signal;
  }
  return StepStatus::failed;
}

}  // namespace

CoqBackend::CoqBackend(SessionConfig cfg) : cfg_(std::move(cfg)), pool_(cfg_) {
  try {
    version_ = probe_version(cfg_);
  } catch (const SessionError& e) {
    throw BackendUnavailable(std::string("Coq backend unavailable: ") + e.what());
  }
}

ScriptResult CoqBackend::run_script(const TheoremStatement& statement,
                                    std::span<const std::string> tactics,
                                    bool record_transcript) {
  ScriptResult r;
  std::unique_ptr<Session> session;
  try {
    session = pool_.acquire(statement.preamble);
  } catch (const SessionError& e) {
    throw BackendUnavailable(e.what());
  }
  session->count_use();

  auto send = [&](const std::string& sentence, bool scored) {
    auto reply = session->submit(sentence);
    if (record_transcript) {
      r.transcript.push_back({sentence, reply.raw,
                              scored ? to_string(reply.classification) : "unscored"});
    }
    return reply;
  };
  auto fault = [&](const std::string& what, const Reply& reply) {
    r.failure = FailureKind::backend_fault;
    r.fault_message = what + ": " + reply.raw;
    pool_.release(std::move(session));
    return r;
  };

  // Any proof left open by a previous individual is dropped first.
  const auto reset = send("Abort All.", false);
  if (reset.died || reset.timed_out) return fault("session lost", reset);

  for (const std::string& sentence : {statement.declaration, std::string("Proof."),
                                      std::string("intros.")}) {
    const auto reply = send(sentence, false);
    if (reply.died || reply.timed_out || reply.classification != Classification::passed)
      return fault("unscored prefix sentence '" + sentence + "' rejected", reply);
  }

  for (std::size_t i = 0; i < tactics.size(); ++i) {
    const auto reply = send(tactics[i] + ".", true);
    if (reply.died) return fault("session died at tactic " + std::to_string(i), reply);
    r.steps.push_back({i, to_step(reply.classification), reply.raw});
    if (reply.timed_out) {
      r.failure = FailureKind::timeout;
      return r;  // session already killed; not returned to the pool
    }
    if (reply.classification != Classification::passed) {
      pool_.release(std::move(session));
      return r;
    }
  }

  const auto qed = send("Qed.", false);
  if (qed.died || qed.timed_out) return fault("Qed. not answered", qed);
  r.qed_accepted = qed.classification == Classification::passed;
  pool_.release(std::move(session));
  return r;
}

}  // namespace evoproof::coq

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


// Test doubles shared by the unit suites and the acceptance binary.

#ifndef EVOPROOF_TESTS_SCRIPTED_BACKEND_HPP_
#define EVOPROOF_TESTS_SCRIPTED_BACKEND_HPP_

#include <atomic>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evoproof/evaluation.hpp"

namespace evoproof::testing {

// Answers each script through a caller-supplied function and counts calls.
class ScriptedBackend : public Backend {
 public:
  using Fn = std::function<ScriptResult(const std::vector<std::string>&)>;
  explicit ScriptedBackend(Fn fn) : fn_(std::move(fn)) {}

  std::string id() const override { return "scripted"; }
  std::string version() const override { return "scripted-1"; }
  ScriptResult run_script(const TheoremStatement&,
                          std::span<const std::string> tactics,
                          bool = false) override {
    ++calls;
    return fn_(std::vector<std::string>(tactics.begin(), tactics.end()));
  }

  std::atomic<int> calls{0};

 private:
  Fn fn_;
};

// `passes` tactics pass; then an optional failure or completion signal.
inline ScriptResult make_result(std::size_t passes, std::optional<StepStatus> then,
                                std::optional<bool> qed) {
  ScriptResult r;
  for (std::size_t i = 0; i < passes; ++i) r.steps.push_back({i, StepStatus::passed, "ok"});
  if (then) r.steps.push_back({passes, *then, "stop"});
  r.qed_accepted = then ? std::nullopt : qed;
  return r;
}

}  // namespace evoproof::testing

#endif  // EVOPROOF_TESTS_SCRIPTED_BACKEND_HPP_

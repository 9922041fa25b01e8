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

#ifndef EVOPROOF_COQ_HPP_
#define EVOPROOF_COQ_HPP_

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evoproof/evaluation.hpp"

namespace evoproof::coq {

struct SessionConfig {
  std::string executable = "coqtop";
  std::vector<std::string> arguments = {"-q", "-emacs"};
  std::vector<std::string> version_arguments = {"--version"};
  double step_timeout_seconds = 5.0;
  // Text that ends every response from the top level.
  std::string prompt_marker = "</prompt>";
  std::vector<std::string> completion_patterns = {"No such unproven subgoal",
                                                  "No such goal"};
  std::vector<std::string> error_patterns = {"Error:", "Syntax error",
                                             "Toplevel input"};
  std::vector<std::string> preamble;
  std::size_t recycle_after = 200;  // individuals per session
};

// Executable from `--coq`, else $EVOPROOF_COQTOP, else "coqtop".
std::string resolve_executable(const std::string& flag_value);

// Startup failures: spawn, version probe, preamble.
class SessionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Classification { passed, failed, completion_signal };
const char* to_string(Classification c);

struct Reply {
  Classification classification = Classification::passed;
  std::string raw;
  bool timed_out = false;
  bool died = false;  // the process exited or closed its output
};

// Classifies a raw response: completion patterns win over error patterns.
Classification classify(const SessionConfig& cfg, const std::string& raw);

// Runs `<exe> <version_arguments>` and returns the first output line.
std::string probe_version(const SessionConfig& cfg);

// Splits preamble lines into sentences ending with '.'.
std::vector<std::string> preamble_sentences(const std::vector<std::string>& lines);

class ChildProcess;

// One live top level with its preamble loaded.
class Session {
 public:
  explicit Session(SessionConfig cfg);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  Reply submit(const std::string& sentence);
  bool alive() const;
  std::size_t uses() const { return uses_; }
  void count_use() { ++uses_; }
  const std::vector<std::string>& preamble() const { return cfg_.preamble; }

 private:
  SessionConfig cfg_;
  std::unique_ptr<ChildProcess> proc_;
  std::size_t uses_ = 0;
};

// Hands out sessions with exclusive ownership; sessions are created on
// demand, so the pool grows to the number of concurrent callers.
class SessionPool {
 public:
  explicit SessionPool(SessionConfig base) : base_(std::move(base)) {}

  std::unique_ptr<Session> acquire(const std::vector<std::string>& preamble);
  void release(std::unique_ptr<Session> s);

 private:
  SessionConfig base_;
  std::mutex mu_;
  std::vector<std::unique_ptr<Session>> idle_;
};

class CoqBackend : public Backend {
 public:
  // Probes the executable; throws BackendUnavailable if it does not answer.
  explicit CoqBackend(SessionConfig cfg);

  std::string id() const override { return "coq"; }
  std::string version() const override { return version_; }
  ScriptResult run_script(const TheoremStatement& statement,
                          std::span<const std::string> tactics,
                          bool record_transcript = false) override;

 private:
  SessionConfig cfg_;
  std::string version_;
  SessionPool pool_;
};

}  // namespace evoproof::coq

#endif  // EVOPROOF_COQ_HPP_

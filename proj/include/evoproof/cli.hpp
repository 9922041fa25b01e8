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

#ifndef EVOPROOF_CLI_HPP_
#define EVOPROOF_CLI_HPP_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "evoproof/config.hpp"
#include "evoproof/evaluation.hpp"

namespace evoproof::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;  // verify: proof not accepted
inline constexpr int kFailure = 2;   // bad input, backend unavailable

std::unique_ptr<Backend> make_backend(const std::string& name,
                                      const std::string& coq_executable,
                                      double step_timeout);

// One evolve() per (theorem, seed); writes under manifest.out_dir:
//   <theorem>/seed-<n>/{report.json, generations.csv, archive.jsonl,
//                       proofs/proof-<k>.v, transcripts/proof-<k>.txt}
int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& script_path, const std::string& theorem_path,
               Backend& backend, std::ostream& out, std::ostream& err);

int cmd_stats(const std::vector<std::string>& paths, const std::string& csv_path,
              std::ostream& out, std::ostream& err);

// Tactic lines between "intros." and "Qed." of a rendered proof script.
std::vector<std::string> parse_proof_script(const std::string& text);

// Entry point shared by the executable and the tests; args excludes argv[0].
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evoproof::cli

#endif  // EVOPROOF_CLI_HPP_

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

#ifndef EVOPROOF_REPORT_IO_HPP_
#define EVOPROOF_REPORT_IO_HPP_

#include <string>
#include <string_view>

#include "evoproof/operators.hpp"

namespace evoproof {

// Hash over the search-relevant settings (everything but the seed), so runs
// that differ only by seed aggregate together.
std::string config_hash(const EAConfig& config, std::size_t tactic_base_size);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);

// header: generation,best_fitness,mean_fitness,complete_count,distinct_complete,new_distinct
std::string generations_csv(const RunReport& report);

}  // namespace evoproof

#endif  // EVOPROOF_REPORT_IO_HPP_

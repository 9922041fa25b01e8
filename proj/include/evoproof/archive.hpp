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

#ifndef EVOPROOF_ARCHIVE_HPP_
#define EVOPROOF_ARCHIVE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evoproof/genome.hpp"

namespace evoproof {

struct ProofRecord {
  std::string theorem_id;
  std::vector<Gene> genes;           // the scored tactics only
  std::vector<std::string> tactics;  // rendered texts, the dedup key
  std::int64_t generation = 0;
  std::uint64_t seed = 0;
  bool verified = false;
  std::int64_t length = 0;  // s

  bool operator==(const ProofRecord&) const = default;
};

struct GenerationStats {
  std::int64_t generation = 0;
  std::int64_t best_fitness = 0;
  double mean_fitness = 0.0;
  std::int64_t complete_count = 0;
  std::int64_t distinct_complete = 0;  // cumulative over the run
  std::int64_t new_distinct = 0;

  bool operator==(const GenerationStats&) const = default;
};

enum class RecordStatus { inserted, duplicate };

// Distinct complete proofs keyed by (theorem id, tactic texts), in
// first-insertion order.
class ProofArchive {
 public:
  RecordStatus record(const ProofRecord& rec);
  bool contains(const ProofRecord& rec) const;

  const std::vector<ProofRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  // Set union; the result is independent of merge order up to record order.
  void merge(const ProofArchive& other);

  std::string to_jsonl() const;
  static ProofArchive from_jsonl(std::string_view text);

 private:
  using Key = std::pair<std::string, std::vector<std::string>>;
  std::set<Key> keys_;
  std::vector<ProofRecord> records_;
};

struct Probability {
  double value = 0.0;
  double log10_value = 0.0;
  std::string formatted;  // e.g. "9.542e-08"
};

// evaluations / base_size^length, computed in log space when the power would
// overflow.
Probability random_search_probability(std::int64_t evaluations,
                                      std::int64_t base_size,
                                      std::int64_t length);

// Four-significant-figure scientific notation from a base-10 logarithm.
std::string format_scientific(double log10_value);

struct DiversitySummary {
  std::string theorem_id;
  bool known = false;  // false when the archive holds nothing for the theorem
  std::size_t distinct = 0;
  std::map<std::int64_t, std::size_t> length_histogram;
  std::optional<std::int64_t> first_generation;
};

DiversitySummary diversity_summary(const ProofArchive& archive,
                                   const std::string& theorem_id);

}  // namespace evoproof

#endif  // EVOPROOF_ARCHIVE_HPP_

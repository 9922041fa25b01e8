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

#include <algorithm>
#include <cmath>

#include "evoproof/archive.hpp"

using namespace evoproof;

namespace {

ProofRecord proof(std::string theorem, std::vector<std::string> tactics,
                  std::int64_t generation = 0, std::uint64_t seed = 1) {
  ProofRecord r;
  r.theorem_id = std::move(theorem);
  r.tactics = std::move(tactics);
  for (std::size_t i = 0; i < r.tactics.size(); ++i) r.genes.push_back(Gene(i));
  r.length = static_cast<std::int64_t>(r.tactics.size());
  r.generation = generation;
  r.seed = seed;
  r.verified = true;
  return r;
}

// Exact B^L with 128-bit integers; valid while the power fits.
long double exact_probability(std::int64_t e, std::int64_t b, std::int64_t l) {
  unsigned __int128 space = 1;
  for (std::int64_t i = 0; i < l; ++i) space *= static_cast<unsigned __int128>(b);
  return static_cast<long double>(e) / static_cast<long double>(space);
}

}  // namespace

TEST_CASE("baseline probability for 8000 evaluations over 153^5") {
  const auto p = random_search_probability(8000, 153, 5);
  CHECK(p.formatted == "9.542e-08");
  CHECK(std::abs(p.value - double(exact_probability(8000, 153, 5))) / p.value < 1e-12);
}

TEST_CASE("probability agrees with exact integer arithmetic") {
  for (std::int64_t b : {2, 7, 14, 153}) {
    for (std::int64_t l = 1; l <= 15; ++l) {
      if (std::log2(double(b)) * double(l) > 120) continue;
      for (std::int64_t e : {1, 200, 8000, 100000}) {
        const auto p = random_search_probability(e, b, l);
        const double want = double(exact_probability(e, b, l));
        CHECK(std::abs(p.value - want) / want < 1e-12);
      }
    }
  }
}

TEST_CASE("log form is additive in the length") {
  for (std::int64_t l = 1; l < 60; ++l) {
    const auto a = random_search_probability(8000, 153, l);
    const auto b = random_search_probability(8000, 153, l + 1);
    CHECK(std::abs((a.log10_value - b.log10_value) - std::log10(153.0)) < 1e-12);
  }
  // Beyond double range the log form still formats.
  const auto huge = random_search_probability(8000, 153, 200);
  CHECK(std::isfinite(huge.log10_value));
  CHECK(huge.formatted.find("e-") != std::string::npos);
  CHECK(random_search_probability(0, 153, 5).formatted == "0");
  CHECK_THROWS(random_search_probability(1, 0, 5));
}

TEST_CASE("scientific formatting rounds the mantissa") {
  CHECK(format_scientific(std::log10(9.9996e-3)) == "1.000e-02");
  CHECK(format_scientific(std::log10(1.2344e5)) == "1.234e+05");
  CHECK(format_scientific(0.0) == "1.000e+00");
}

TEST_CASE("archive deduplicates on theorem and tactic text") {
  ProofArchive a;
  CHECK(a.record(proof("t", {"split", "assumption"}, 3)) == RecordStatus::inserted);
  CHECK(a.record(proof("t", {"split", "assumption"}, 5)) == RecordStatus::duplicate);
  CHECK(a.record(proof("u", {"split", "assumption"})) == RecordStatus::inserted);
  CHECK(a.record(proof("t", {"split", "exact H"})) == RecordStatus::inserted);
  CHECK(a.size() == 3);
  CHECK(a.records()[0].generation == 3);  // first sighting wins
}

TEST_CASE("merge is a set union") {
  ProofArchive x, y;
  x.record(proof("t", {"a"}));
  x.record(proof("t", {"b"}));
  y.record(proof("t", {"b"}));
  y.record(proof("t", {"c"}));
  auto xy = x, yx = y;
  xy.merge(y);
  yx.merge(x);
  CHECK(xy.size() == 3);
  CHECK(yx.size() == 3);
  for (const auto& r : xy.records()) CHECK(yx.contains(r));
  auto twice = xy;
  twice.merge(xy);
  CHECK(twice.size() == 3);
}

TEST_CASE("jsonl round trip") {
  ProofArchive a;
  a.record(proof("n_le_k", {"rewrite H", "eapply le_0_n"}, 12, 4));
  a.record(proof("trans", {"apply H0", "apply H", "assumption"}, 0, 9));
  const auto text = a.to_jsonl();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("\"theorem\":\"n_le_k\"") != std::string::npos);
  const auto b = ProofArchive::from_jsonl(text);
  CHECK(b.records() == a.records());
  CHECK(b.to_jsonl() == text);
  CHECK_THROWS(ProofArchive::from_jsonl("{\"theorem\": 3}\n"));
}

TEST_CASE("diversity summary") {
  ProofArchive a;
  a.record(proof("t", {"a", "b"}, 4));
  a.record(proof("t", {"c"}, 2));
  a.record(proof("t", {"d", "e"}, 7));
  a.record(proof("other", {"a"}, 0));
  const auto d = diversity_summary(a, "t");
  CHECK(d.known);
  CHECK(d.distinct == 3);
  CHECK(d.length_histogram == std::map<std::int64_t, std::size_t>{{1, 1}, {2, 2}});
  CHECK(d.first_generation == 2);
  const auto none = diversity_summary(a, "missing");
  CHECK_FALSE(none.known);
  CHECK(none.distinct == 0);
  CHECK_FALSE(none.first_generation);
}

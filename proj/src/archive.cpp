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

#include "evoproof/archive.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace evoproof {

using nlohmann::json;

RecordStatus ProofArchive::record(const ProofRecord& rec) {
  if (!keys_.emplace(rec.theorem_id, rec.tactics).second)
    return RecordStatus::duplicate;
  records_.push_back(rec);
  return RecordStatus::inserted;
}

bool ProofArchive::contains(const ProofRecord& rec) const {
  return keys_.contains({rec.theorem_id, rec.tactics});
}

void ProofArchive::merge(const ProofArchive& other) {
  for (const auto& r : other.records_) record(r);
}

std::string ProofArchive::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    json j{{"theorem", r.theorem_id},   {"genes", r.genes},
           {"tactics", r.tactics},      {"generation", r.generation},
           {"seed", r.seed},            {"verified", r.verified},
           {"length", r.length}};
    out += j.dump() + '\n';
  }
  return out;
}

ProofArchive ProofArchive::from_jsonl(std::string_view text) {
  ProofArchive a;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = json::parse(line);
      ProofRecord r;
      r.theorem_id = j.at("theorem").get<std::string>();
      r.genes = j.at("genes").get<std::vector<Gene>>();
      r.tactics = j.at("tactics").get<std::vector<std::string>>();
      r.generation = j.at("generation").get<std::int64_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.verified = j.at("verified").get<bool>();
      r.length = j.at("length").get<std::int64_t>();
      a.record(r);
    } catch (const json::exception& e) {
      throw std::runtime_error("archive line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return a;
}

std::string format_scientific(double log10_value) {
  auto exponent = static_cast<long>(std::floor(log10_value));
  double mantissa = std::pow(10.0, log10_value - static_cast<double>(exponent));
  mantissa = std::round(mantissa * 1000.0) / 1000.0;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++exponent;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3fe%c%02ld", mantissa,
                exponent < 0 ? '-' : '+', std::labs(exponent));
  return buf;
}

Probability random_search_probability(std::int64_t evaluations,
                                      std::int64_t base_size,
                                      std::int64_t length) {
  if (base_size < 1 || length < 1)
    throw std::invalid_argument("base_size and length must be positive");
  if (evaluations < 0) throw std::invalid_argument("evaluations must be >= 0");
  Probability p;
  const double space = std::pow(static_cast<double>(base_size),
                                static_cast<double>(length));
  const double log_space =
      static_cast<double>(length) * std::log10(static_cast<double>(base_size));
  if (std::isfinite(space) && space > 0.0) {
    p.value = static_cast<double>(evaluations) / space;
  } else {
    p.value = std::pow(10.0, std::log10(static_cast<double>(evaluations)) - log_space);
  }
  if (evaluations == 0) {
    p.log10_value = -INFINITY;
    p.formatted = "0";
    return p;
  }
  p.log10_value = std::log10(static_cast<double>(evaluations)) - log_space;
  p.formatted = format_scientific(p.log10_value);
  return p;
}

DiversitySummary diversity_summary(const ProofArchive& archive,
                                   const std::string& theorem_id) {
  DiversitySummary s;
  s.theorem_id = theorem_id;
  for (const auto& r : archive.records()) {
    if (r.theorem_id != theorem_id) continue;
    s.known = true;
    ++s.distinct;
    ++s.length_histogram[r.length];
    if (!s.first_generation || r.generation < *s.first_generation)
      s.first_generation = r.generation;
  }
  return s;
}

}  // namespace evoproof

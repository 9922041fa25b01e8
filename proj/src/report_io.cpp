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

#include "evoproof/report_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace evoproof {

using nlohmann::ordered_json;

namespace {

ordered_json config_json(const EAConfig& c) {
  return ordered_json{{"pop_size", c.pop_size},
                      {"max_gen", c.max_gen},
                      {"mut_rate", c.mut_rat},
                      {"len_min", c.l_lower},
                      {"len_max", c.l_upper},
                      {"completion_base", c.completion_base},
                      {"seed", c.seed},
                      {"backend", c.backend_id},
                      {"tie_break", to_string(c.tie_break)}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string config_hash(const EAConfig& c, std::size_t tactic_base_size) {
  auto j = config_json(c);
  j.erase("seed");
  j["tactic_base_size"] = tactic_base_size;
  const auto text = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_to_json(const RunReport& r) {
  ordered_json j;
  j["theorem"] = r.theorem_id;
  j["seed"] = r.config.seed;
  j["config"] = config_json(r.config);
  j["config_hash"] = config_hash(r.config, r.tactic_base_size);
  j["backend"] = r.backend_id;
  j["backend_version"] = r.backend_version;
  j["tactic_base_size"] = r.tactic_base_size;
  j["settings"] = r.settings;
  j["finished"] = r.finished;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.first_proof) {
    j["first_proof"] = {{"generation", r.first_proof->generation},
                        {"length", r.first_proof->length}};
  } else {
    j["first_proof"] = nullptr;
  }
  j["distinct_proofs"] = r.distinct_proofs;
  auto rows = ordered_json::array();
  for (const auto& g : r.generations) {
    rows.push_back({{"generation", g.generation},
                    {"best_fitness", g.best_fitness},
                    {"mean_fitness", g.mean_fitness},
                    {"complete_count", g.complete_count},
                    {"distinct_complete", g.distinct_complete},
                    {"new_distinct", g.new_distinct}});
  }
  j["generations"] = std::move(rows);
  return j.dump(2) + '\n';
}

RunReport report_from_json(std::string_view text) {
  RunReport r;
  try {
    const auto j = ordered_json::parse(text);
    const auto& c = j.at("config");
    r.config.pop_size = c.at("pop_size").get<std::int64_t>();
    r.config.max_gen = c.at("max_gen").get<std::int64_t>();
    r.config.mut_rat = c.at("mut_rate").get<double>();
    r.config.l_lower = c.at("len_min").get<std::int64_t>();
    r.config.l_upper = c.at("len_max").get<std::int64_t>();
    r.config.completion_base = c.at("completion_base").get<std::int64_t>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.backend_id = c.at("backend").get<std::string>();
    if (c.contains("tie_break"))
      r.config.tie_break = parse_tie_break(c["tie_break"].get<std::string>());
    r.theorem_id = j.at("theorem").get<std::string>();
    r.backend_id = j.at("backend").get<std::string>();
    r.backend_version = j.at("backend_version").get<std::string>();
    r.tactic_base_size = j.at("tactic_base_size").get<std::size_t>();
    r.finished = j.at("finished").get<bool>();
    if (j.contains("settings"))
      r.settings = j["settings"].get<std::map<std::string, std::string>>();
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    if (!j.at("first_proof").is_null()) {
      r.first_proof = FirstProof{j["first_proof"].at("generation").get<std::int64_t>(),
                                 j["first_proof"].at("length").get<std::int64_t>()};
    }
    r.distinct_proofs = j.at("distinct_proofs").get<std::int64_t>();
    for (const auto& g : j.at("generations")) {
      r.generations.push_back({g.at("generation").get<std::int64_t>(),
                               g.at("best_fitness").get<std::int64_t>(),
                               g.at("mean_fitness").get<double>(),
                               g.at("complete_count").get<std::int64_t>(),
                               g.at("distinct_complete").get<std::int64_t>(),
                               g.at("new_distinct").get<std::int64_t>()});
    }
  } catch (const ordered_json::exception& e) {
    throw std::runtime_error(std::string("malformed run report: ") + e.what());
  }
  return r;
}

std::string generations_csv(const RunReport& r) {
  std::string out =
      "generation,best_fitness,mean_fitness,complete_count,distinct_complete,new_distinct\n";
  for (const auto& g : r.generations) {
    out += std::to_string(g.generation) + ',' + std::to_string(g.best_fitness) + ',' +
           format_double(g.mean_fitness) + ',' + std::to_string(g.complete_count) + ',' +
           std::to_string(g.distinct_complete) + ',' + std::to_string(g.new_distinct) +
           '\n';
  }
  return out;
}

}  // namespace evoproof

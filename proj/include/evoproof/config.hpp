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

#ifndef EVOPROOF_CONFIG_HPP_
#define EVOPROOF_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evoproof/genome.hpp"

namespace evoproof {

// Parsed `key=value` file. Repeated keys accumulate (used for theorem and
// seed); every value remembers its line for diagnostics.
class ConfigFile {
 public:
  struct Value {
    std::string text;
    std::size_t line;
  };

  static ConfigFile parse(std::string_view text, const std::string& origin = "config");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  const std::vector<Value>& all(const std::string& key) const;
  const Value& last(const std::string& key) const { return all(key).back(); }

  // Typed accessors; errors name the origin and line.
  std::int64_t get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::string get_path(const std::string& key) const;  // relative to the file

  const std::string& origin() const { return origin_; }
  const std::string& directory() const { return directory_; }

 private:
  std::string origin_;
  std::string directory_;
  std::map<std::string, std::vector<Value>> values_;
};

// Everything a `run` needs, after merging flags over the config file over
// defaults.
struct RunManifest {
  std::string config_path;
  std::vector<std::string> theorems;  // files, directories expanded
  std::string tactic_base;
  std::string backend = "toy";
  std::string coq_executable;
  std::string out_dir = "evoproof-out";
  std::vector<std::uint64_t> seeds = {1};
  unsigned workers = 1;
  double step_timeout = 5.0;
  EAConfig ea;
};

// Expands directory entries to the sorted `*.thm` files inside.
std::vector<std::string> expand_theorem_paths(const std::vector<std::string>& paths);

std::string default_data_dir();

}  // namespace evoproof

#endif  // EVOPROOF_CONFIG_HPP_

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

#include "evoproof/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace evoproof {

namespace fs = std::filesystem;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "theorem",  "tactic-base", "backend",  "coq",          "pop-size",
      "max-gen",  "mut-rate",    "len-min",  "len-max",      "completion-base",
      "seed",     "out",         "workers",  "step-timeout", "tie-break"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key=value");
    const auto key = trim(std::string_view(line).substr(0, eq));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().contains(key))
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty value for '" + key + "'");
    cfg.values_[key].push_back({value, line_no});
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto cfg = parse(ss.str(), path);
  cfg.directory_ = fs::path(path).parent_path().string();
  return cfg;
}

const std::vector<ConfigFile::Value>& ConfigFile::all(const std::string& key) const {
  static const std::vector<Value> none;
  const auto it = values_.find(key);
  return it == values_.end() ? none : it->second;
}

std::int64_t ConfigFile::get_int(const std::string& key) const {
  const auto& v = last(key);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc{} || ptr != v.text.data() + v.text.size())
    throw ConfigError(origin_ + ":" + std::to_string(v.line) + ": '" + key +
                      "' expects an integer, got '" + v.text + "'");
  return out;
}

double ConfigFile::get_double(const std::string& key) const {
  const auto& v = last(key);
  char* end = nullptr;
  const double out = std::strtod(v.text.c_str(), &end);
  if (end != v.text.c_str() + v.text.size())
    throw ConfigError(origin_ + ":" + std::to_string(v.line) + ": '" + key +
                      "' expects a number, got '" + v.text + "'");
  return out;
}

std::string ConfigFile::get_path(const std::string& key) const {
  const fs::path p(last(key).text);
  if (p.is_absolute() || directory_.empty()) return p.string();
  return (fs::path(directory_) / p).string();
}

std::vector<std::string> expand_theorem_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".thm")
          found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("EVOPROOF_DATA"); env && *env) return env;
  return EVOPROOF_DATA_DIR;
}

}  // namespace evoproof

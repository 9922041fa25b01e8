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

#ifndef EVOPROOF_GENOME_HPP_
#define EVOPROOF_GENOME_HPP_

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evoproof {

using Gene = std::uint32_t;

// Raised when a tactic-base or theorem file cannot be parsed. `line` is
// 1-based, 0 when the error is not tied to a line.
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A gene that does not index into the tactic base.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::size_t position, Gene gene)
      : std::runtime_error("gene " + std::to_string(gene) + " at position " +
                           std::to_string(position) + " is out of range"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct TacticEntry {
  Gene index = 0;
  std::string text;  // without the terminating period
  bool no_immediate_repeat = false;
  std::set<Gene> pair_exclusions;
};

// The gene alphabet. Immutable once loaded.
class TacticBase {
 public:
  explicit TacticBase(std::vector<TacticEntry> entries);

  const std::vector<TacticEntry>& entries() const { return entries_; }
  const TacticEntry& operator[](Gene g) const { return entries_.at(g); }
  std::size_t size() const { return entries_.size(); }
  Gene t_max() const { return static_cast<Gene>(entries_.size() - 1); }

  // True when `a` directly followed by `b` breaks a repeat constraint.
  bool forbids_adjacent(Gene a, Gene b) const;

 private:
  std::vector<TacticEntry> entries_;
};

// Parses the tab-separated tactic-base format:
//   <tactic text>[\tnorepeat][\texcl=<i>,<j>...]
// `#` lines are comments; blank lines are skipped.
TacticBase load_tactic_base(std::string_view source);
TacticBase load_tactic_base_file(const std::string& path);
std::string serialize_tactic_base(const TacticBase& base);

struct Chromosome {
  std::vector<Gene> genes;

  std::size_t length() const { return genes.size(); }
  bool operator==(const Chromosome&) const = default;
};

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const;
};

struct TheoremStatement {
  std::string id;                     // name from the declaration
  std::vector<std::string> preamble;  // verbatim lines
  std::string declaration;            // e.g. "Theorem foo : A -> A."
};

// Theorem file: a `[preamble]` section and a `[statement]` section.
TheoremStatement load_theorem(std::string_view source);
TheoremStatement load_theorem_file(const std::string& path);

// Extracts the name following Theorem/Lemma/Example/... in a declaration.
std::string declaration_name(std::string_view declaration);

std::vector<std::string> decode(std::span<const Gene> genes,
                                const TacticBase& base);

// preamble, declaration, "Proof.", "intros.", one "<tactic>." per gene, "Qed."
std::string render_script(std::span<const Gene> genes, const TacticBase& base,
                          const TheoremStatement& statement);
std::string render_tactics(std::span<const std::string> tactics,
                           const TheoremStatement& statement);

struct Violation {
  std::size_t position;
  Gene gene;
};

// Every out-of-range gene; empty means valid.
std::vector<Violation> validate(const Chromosome& c, const TacticBase& base);

// How rank() orders members of equal fitness (after which population order
// decides): shorter chromosome first, or population order alone.
enum class TieBreak { shorter_first, stable };

struct EAConfig {
  std::int64_t pop_size = 1000;
  std::int64_t max_gen = 100;
  double mut_rat = 0.25;
  std::int64_t l_lower = 4;
  std::int64_t l_upper = 15;
  std::int64_t completion_base = 1000;
  std::uint64_t seed = 0;
  std::string backend_id = "toy";
  TieBreak tie_break = TieBreak::shorter_first;
};

const char* to_string(TieBreak t);
TieBreak parse_tie_break(const std::string& text);  // throws ConfigError

// `key` names the offending setting (flag name without dashes) when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Throws ConfigError describing the first broken constraint.
void validate_config(const EAConfig& config);

}  // namespace evoproof

#endif  // EVOPROOF_GENOME_HPP_

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

#include "evoproof/genome.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace evoproof {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view rtrim(std::string_view s) {
  const auto e = s.find_last_not_of(" \t\r\n");
  return e == std::string_view::npos ? std::string_view{} : s.substr(0, e + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TacticBase::TacticBase(std::vector<TacticEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw LoadError("tactic base is empty");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index != i) throw LoadError("entry index mismatch at " + std::to_string(i));
    if (e.text.empty()) throw LoadError("empty tactic text");
    if (e.text.find_first_of(".\n\r") != std::string::npos)
      throw LoadError("tactic text contains a period or line break: " + e.text);
    if (!seen.insert(e.text).second)
      throw LoadError("duplicate tactic: " + e.text);
    for (Gene p : e.pair_exclusions) {
      if (p >= entries_.size())
        throw LoadError("exclusion partner " + std::to_string(p) +
                        " out of range for " + e.text);
      if (p == e.index && !e.no_immediate_repeat)
        throw LoadError("self-exclusion without norepeat for " + e.text);
    }
  }
}

bool TacticBase::forbids_adjacent(Gene a, Gene b) const {
  const auto& ea = entries_.at(a);
  if (a == b && ea.no_immediate_repeat) return true;
  return ea.pair_exclusions.contains(b) ||
         entries_.at(b).pair_exclusions.contains(a);
}

TacticBase load_tactic_base(std::string_view source) {
  std::vector<TacticEntry> entries;
  std::vector<std::size_t> line_of;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  for (auto raw : split(source, '\n')) {
    ++line_no;
    const auto line = rtrim(raw);
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split(line, '\t');
    TacticEntry entry;
    entry.index = static_cast<Gene>(entries.size());
    entry.text = std::string(trim(fields[0]));
    if (entry.text.empty()) throw LoadError("empty tactic text", line_no);
    if (entry.text.find('.') != std::string::npos)
      throw LoadError("tactic text must not contain '.'", line_no);
    if (!seen.insert(entry.text).second)
      throw LoadError("duplicate tactic '" + entry.text + "'", line_no);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto flag = trim(fields[f]);
      if (flag.empty()) continue;
      if (flag == "norepeat") {
        entry.no_immediate_repeat = true;
      } else if (flag.starts_with("excl=")) {
        const auto list = flag.substr(5);
        if (list.empty()) throw LoadError("empty excl= list", line_no);
        for (auto item : split(list, ',')) {
          item = trim(item);
          Gene v = 0;
          const auto [ptr, ec] =
              std::from_chars(item.data(), item.data() + item.size(), v);
          if (ec != std::errc{} || ptr != item.data() + item.size() ||
              item.empty())
            throw LoadError("bad exclusion index '" + std::string(item) + "'",
                            line_no);
          entry.pair_exclusions.insert(v);
        }
      } else {
        throw LoadError("unknown flag '" + std::string(flag) + "'", line_no);
      }
    }
    entries.push_back(std::move(entry));
    line_of.push_back(line_no);
  }
  if (entries.empty()) throw LoadError("tactic base is empty");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (Gene p : entries[i].pair_exclusions) {
      if (p >= entries.size())
        throw LoadError("exclusion index " + std::to_string(p) + " out of range",
                        line_of[i]);
      if (p == i && !entries[i].no_immediate_repeat)
        throw LoadError("self-exclusion requires norepeat", line_of[i]);
    }
  }
  return TacticBase(std::move(entries));
}

TacticBase load_tactic_base_file(const std::string& path) {
  return load_tactic_base(read_file(path));
}

std::string serialize_tactic_base(const TacticBase& base) {
  std::string out;
  for (const auto& e : base.entries()) {
    out += e.text;
    if (e.no_immediate_repeat) out += "\tnorepeat";
    if (!e.pair_exclusions.empty()) {
      out += "\texcl=";
      bool first = true;
      for (Gene p : e.pair_exclusions) {
        if (!first) out += ',';
        out += std::to_string(p);
        first = false;
      }
    }
    out += '\n';
  }
  return out;
}

std::size_t ChromosomeHash::operator()(const Chromosome& c) const {
  // FNV-1a over the gene values.
  std::uint64_t h = 1469598103934665603ull;
  for (Gene g : c.genes) {
    for (int i = 0; i < 4; ++i) {
      h ^= (g >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  h ^= c.genes.size();
  return static_cast<std::size_t>(h);
}

std::string declaration_name(std::string_view declaration) {
  static constexpr std::string_view kKeywords[] = {
      "Theorem", "Lemma", "Example", "Corollary", "Proposition", "Fact",
      "Remark"};
  auto rest = trim(declaration);
  bool matched = false;
  for (auto kw : kKeywords) {
    if (rest.starts_with(kw) && rest.size() > kw.size() &&
        (rest[kw.size()] == ' ' || rest[kw.size()] == '\t')) {
      rest = trim(rest.substr(kw.size()));
      matched = true;
      break;
    }
  }
  if (!matched) return {};
  const auto end = rest.find_first_of(" \t:(");
  return std::string(rest.substr(0, end));
}

TheoremStatement load_theorem(std::string_view source) {
  enum class Section { none, preamble, statement } section = Section::none;
  TheoremStatement st;
  std::vector<std::string> statement_lines;
  std::size_t line_no = 0;
  for (auto raw : split(source, '\n')) {
    ++line_no;
    const auto line = rtrim(raw);
    const auto t = trim(line);
    if (t == "[preamble]") {
      section = Section::preamble;
      continue;
    }
    if (t == "[statement]") {
      section = Section::statement;
      continue;
    }
    switch (section) {
      case Section::none:
        if (!t.empty() && t.front() != '#')
          throw LoadError("content outside of a section", line_no);
        break;
      case Section::preamble:
        if (!t.empty()) st.preamble.emplace_back(line);
        break;
      case Section::statement:
        if (!t.empty()) statement_lines.emplace_back(t);
        break;
    }
  }
  if (statement_lines.empty()) throw LoadError("missing [statement] section");
  for (const auto& l : statement_lines) {
    if (!st.declaration.empty()) st.declaration += ' ';
    st.declaration += l;
  }
  if (st.declaration.back() != '.')
    throw LoadError("declaration must end with '.'");
  st.id = declaration_name(st.declaration);
  if (st.id.empty())
    throw LoadError("declaration must start with Theorem/Lemma and a name");
  return st;
}

TheoremStatement load_theorem_file(const std::string& path) {
  try {
    return load_theorem(read_file(path));
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

std::vector<std::string> decode(std::span<const Gene> genes,
                                const TacticBase& base) {
  std::vector<std::string> out;
  out.reserve(genes.size());
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (genes[i] >= base.size()) throw DecodeError(i, genes[i]);
    out.push_back(base[genes[i]].text);
  }
  return out;
}

std::string render_tactics(std::span<const std::string> tactics,
                           const TheoremStatement& statement) {
  std::string out;
  for (const auto& l : statement.preamble) out += l + '\n';
  out += statement.declaration + '\n';
  out += "Proof.\n";
  out += "intros.\n";
  for (const auto& t : tactics) out += t + ".\n";
  out += "Qed.\n";
  return out;
}

std::string render_script(std::span<const Gene> genes, const TacticBase& base,
                          const TheoremStatement& statement) {
  return render_tactics(decode(genes, base), statement);
}

std::vector<Violation> validate(const Chromosome& c, const TacticBase& base) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < c.genes.size(); ++i)
    if (c.genes[i] > base.t_max()) out.push_back({i, c.genes[i]});
  return out;
}

const char* to_string(TieBreak t) {
  return t == TieBreak::stable ? "stable" : "shorter";
}

TieBreak parse_tie_break(const std::string& text) {
  if (text == "shorter") return TieBreak::shorter_first;
  if (text == "stable") return TieBreak::stable;
  throw ConfigError("tie-break must be 'shorter' or 'stable', got '" + text + "'", "tie-break");
}

void validate_config(const EAConfig& c) {
  if (c.pop_size < 2) throw ConfigError("pop-size must be at least 2", "pop-size");
  if (c.max_gen < 1) throw ConfigError("max-gen must be positive", "max-gen");
  if (!(c.mut_rat >= 0.0 && c.mut_rat <= 1.0))
    throw ConfigError("mut-rate must lie in [0, 1]", "mut-rate");
  if (c.l_lower < 1) throw ConfigError("len-min must be positive", "len-min");
  if (c.l_upper < c.l_lower) throw ConfigError("len-max must be >= len-min", "len-max");
  if (c.completion_base <= c.l_upper)
    throw ConfigError("completion-base must exceed len-max", "completion-base");
}

}  // namespace evoproof

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

#include <cctype>
#include <deque>
#include <unordered_set>

#include "evoproof/toy.hpp"

namespace evoproof::toy {

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(name), {}, {}}));
}

Formula Formula::truth() {
  return Formula(std::make_shared<const Node>(Node{Kind::truth, {}, {}, {}}));
}

namespace {

std::shared_ptr<const Formula> boxed(Formula f) {
  return std::make_shared<const Formula>(std::move(f));
}

}  // namespace

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::conj, {}, boxed(std::move(l)), boxed(std::move(r))}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::disj, {}, boxed(std::move(l)), boxed(std::move(r))}));
}

Formula Formula::imp(Formula a, Formula c) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::imp, {}, boxed(std::move(a)), boxed(std::move(c))}));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::atom: return name() == o.name();
    case Kind::truth: return true;
    default: return left() == o.left() && right() == o.right();
  }
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::atom: return name();
    case Kind::truth: return "~top~";
    case Kind::conj: return "(" + left().to_string() + " /\\ " + right().to_string() + ")";
    case Kind::disj: return "(" + left().to_string() + " \\/ " + right().to_string() + ")";
    case Kind::imp: return "(" + left().to_string() + " -> " + right().to_string() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Formula parse() {
    Formula f = implication();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_).starts_with(tok)) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::imp(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (accept("\\/")) return Formula::disj(std::move(lhs), disjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = primary();
    if (accept("/\\")) return Formula::conj(std::move(lhs), conjunction());
    return lhs;
  }

  Formula primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of formula");
    if (accept("~top~")) return Formula::truth();
    if (accept("(")) {
      Formula inner = implication();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    const auto start = pos_;
    auto ident_char = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    if (!std::isalpha(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '_')
      fail("expected a proposition");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return Formula::atom(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string fresh_name(const std::vector<Hypothesis>& hyps) {
  auto taken = [&](const std::string& n) {
    for (const auto& h : hyps)
      if (h.name == n) return true;
    return false;
  };
  if (!taken("H")) return "H";
  for (int i = 0;; ++i) {
    auto n = "H" + std::to_string(i);
    if (!taken(n)) return n;
  }
}

const Hypothesis* find_hyp(const Subgoal& g, const std::string& name) {
  for (const auto& h : g.hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

// Replaces the focused goal by `replacement` (possibly none).
GoalState replace_front(const GoalState& s, std::vector<Subgoal> replacement) {
  GoalState out;
  out.subgoals = std::move(replacement);
  out.subgoals.insert(out.subgoals.end(), s.subgoals.begin() + 1, s.subgoals.end());
  return out;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

Formula parse_declaration(std::string_view declaration) {
  const auto colon = declaration.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("declaration has no ':'", declaration.size() + 1);
  auto body = declaration.substr(colon + 1);
  const auto dot = body.find_last_of('.');
  if (dot == std::string_view::npos)
    throw ParseError("declaration must end with '.'", declaration.size() + 1);
  body = body.substr(0, dot);
  try {
    return parse_formula(body);
  } catch (const ParseError& e) {
    // Report columns relative to the whole declaration.
    const std::string msg = e.what();
    throw ParseError(msg.substr(msg.find(": ") + 2), e.column() + colon + 1);
  }
}

GoalState GoalState::initial(Formula goal) {
  GoalState s;
  s.subgoals.push_back(Subgoal{{}, std::move(goal)});
  return s;
}

std::string GoalState::key() const {
  std::string k;
  for (const auto& g : subgoals) {
    k += '[';
    for (const auto& h : g.hypotheses) k += h.name + ':' + h.formula.to_string() + ',';
    k += "|-" + g.target.to_string() + ']';
  }
  return k;
}

std::string ToyTactic::to_string() const {
  switch (kind) {
    case Kind::intros: return "intros";
    case Kind::split: return "split";
    case Kind::left: return "left";
    case Kind::right: return "right";
    case Kind::assumption: return "assumption";
    case Kind::exact: return "exact " + hyp;
    case Kind::apply: return "apply " + hyp;
    case Kind::trivial: return "trivial";
  }
  return {};
}

std::optional<ToyTactic> parse_tactic(std::string_view text) {
  using K = ToyTactic::Kind;
  auto t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t == "intros") return ToyTactic{K::intros, {}};
  if (t == "split") return ToyTactic{K::split, {}};
  if (t == "left") return ToyTactic{K::left, {}};
  if (t == "right") return ToyTactic{K::right, {}};
  if (t == "assumption") return ToyTactic{K::assumption, {}};
  if (t == "trivial") return ToyTactic{K::trivial, {}};
  for (auto [word, kind] : {std::pair{std::string_view("exact "), K::exact},
                            std::pair{std::string_view("apply "), K::apply}}) {
    if (t.starts_with(word)) {
      auto arg = t.substr(word.size());
      while (!arg.empty() && arg.front() == ' ') arg.remove_prefix(1);
      if (arg.empty() || arg.find(' ') != std::string_view::npos) return std::nullopt;
      return ToyTactic{kind, std::string(arg)};
    }
  }
  return std::nullopt;
}

std::optional<GoalState> apply_tactic(const GoalState& state, const ToyTactic& t) {
  using K = ToyTactic::Kind;
  using FK = Formula::Kind;
  if (state.closed()) return std::nullopt;
  const Subgoal& g = state.subgoals.front();
  switch (t.kind) {
    case K::intros: {
      // Never fails; with no leading antecedent it is a no-op.
      Subgoal n = g;
      while (n.target.kind() == FK::imp) {
        const Formula antecedent = n.target.left();
        const Formula rest = n.target.right();
        n.hypotheses.push_back({fresh_name(n.hypotheses), antecedent});
        n.target = rest;
      }
      return replace_front(state, {std::move(n)});
    }
    case K::split:
      if (g.target.kind() != FK::conj) return std::nullopt;
      return replace_front(state, {Subgoal{g.hypotheses, g.target.left()},
                                   Subgoal{g.hypotheses, g.target.right()}});
    case K::left:
    case K::right:
      if (g.target.kind() != FK::disj) return std::nullopt;
      return replace_front(
          state, {Subgoal{g.hypotheses, t.kind == K::left ? g.target.left()
                                                          : g.target.right()}});
    case K::assumption:
      for (const auto& h : g.hypotheses)
        if (h.formula == g.target) return replace_front(state, {});
      return std::nullopt;
    case K::exact: {
      const auto* h = find_hyp(g, t.hyp);
      if (!h || !(h->formula == g.target)) return std::nullopt;
      return replace_front(state, {});
    }
    case K::apply: {
      const auto* h = find_hyp(g, t.hyp);
      if (!h || h->formula.kind() != FK::imp || !(h->formula.right() == g.target))
        return std::nullopt;
      return replace_front(state, {Subgoal{g.hypotheses, h->formula.left()}});
    }
    case K::trivial:
      if (g.target.kind() != FK::truth) return std::nullopt;
      return replace_front(state, {});
  }
  return std::nullopt;
}

std::optional<std::vector<ToyTactic>> brute_force_prove(
    const Formula& goal, std::span<const ToyTactic> tactics, std::size_t max_len) {
  struct Node {
    GoalState state;
    std::vector<ToyTactic> path;
  };
  std::deque<Node> frontier;
  std::unordered_set<std::string> seen;
  GoalState start = GoalState::initial(goal);
  seen.insert(start.key());
  frontier.push_back({std::move(start), {}});
  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (node.path.size() >= max_len) continue;
    for (const auto& t : tactics) {
      auto next = apply_tactic(node.state, t);
      if (!next) continue;
      auto path = node.path;
      path.push_back(t);
      if (next->closed()) return path;
      if (seen.insert(next->key()).second)
        frontier.push_back({std::move(*next), std::move(path)});
    }
  }
  return std::nullopt;
}

}  // namespace evoproof::toy

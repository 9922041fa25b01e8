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

#ifndef EVOPROOF_TOY_HPP_
#define EVOPROOF_TOY_HPP_

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evoproof/evaluation.hpp"

namespace evoproof::toy {

// Propositional formulas: atoms, truth, /\, \/, ->.
class Formula {
 public:
  enum class Kind { atom, truth, conj, disj, imp };

  static Formula atom(std::string name);
  static Formula truth();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula a, Formula c);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  bool operator==(const Formula& o) const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> left, right;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error("column " + std::to_string(column) + ": " + what),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Syntax: A, ~top~, P /\ Q, P \/ Q, P -> Q, parentheses. /\ binds tighter
// than \/, which binds tighter than the right-associative ->. Columns in
// errors are 1-based.
Formula parse_formula(std::string_view text);

// Formula part of a declaration "Theorem name : <formula>."
Formula parse_declaration(std::string_view declaration);

struct Hypothesis {
  std::string name;
  Formula formula;
};

struct Subgoal {
  std::vector<Hypothesis> hypotheses;
  Formula target;
};

struct GoalState {
  std::vector<Subgoal> subgoals;  // front is the focused goal

  bool closed() const { return subgoals.empty(); }
  static GoalState initial(Formula goal);
  std::string key() const;  // canonical text, for state deduplication
};

struct ToyTactic {
  enum class Kind { intros, split, left, right, assumption, exact, apply, trivial };
  Kind kind;
  std::string hyp;  // exact / apply argument

  std::string to_string() const;
  bool operator==(const ToyTactic&) const = default;
};

// Parses "intros", "exact H0", ... ; nullopt for anything else.
std::optional<ToyTactic> parse_tactic(std::string_view text);

// Result of one tactic: the new state, or nullopt when inapplicable.
std::optional<GoalState> apply_tactic(const GoalState& state, const ToyTactic& t);

// Breadth-first search for a shortest sequence over `tactics` closing `goal`.
std::optional<std::vector<ToyTactic>> brute_force_prove(
    const Formula& goal, std::span<const ToyTactic> tactics, std::size_t max_len);

// Hermetic backend. A tactic submitted after the goal stack empties gets a
// completion signal; an unknown tactic name fails its step.
class ToyBackend : public Backend {
 public:
  std::string id() const override { return "toy"; }
  std::string version() const override { return "toy-1"; }
  ScriptResult run_script(const TheoremStatement& statement,
                          std::span<const std::string> tactics,
                          bool record_transcript = false) override;
};

}  // namespace evoproof::toy

#endif  // EVOPROOF_TOY_HPP_

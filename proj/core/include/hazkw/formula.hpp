// Copyright 2026 The hazkw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazkw/ternary.hpp"

namespace hazkw {

enum class NodeKind : std::uint8_t { Leaf, Const, And, Or, Not };

/// How variable indices are rendered. `Mux` uses s1..sn for 1..n and
/// x0..x_{2^n-1} for n+1..n+2^n; `Indexed` uses v1..vk.
enum class VarStyle : std::uint8_t { Indexed, Mux };

struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;

/// Immutable formula node. Subtrees may be shared between parents; every
/// metric below refers to the unfolded tree.
struct FormulaNode {
  NodeKind kind = NodeKind::Leaf;
  std::uint32_t var = 0;  // Leaf: 1-based variable index
  bool negated = false;   // Leaf: literal polarity
  bool value = false;     // Const
  NodePtr left;           // And/Or/Not
  NodePtr right;          // And/Or

  std::uint64_t leaves = 1;       // leaf count (constants count as leaves)
  std::uint32_t height = 0;       // longest root-to-leaf path, in edges
  std::uint32_t alternations = 0; // gate-type segments on the worst path
};

namespace node {

NodePtr literal(std::uint32_t var, bool negated = false);
NodePtr constant(bool value);
NodePtr conj(NodePtr a, NodePtr b);
NodePtr disj(NodePtr a, NodePtr b);
NodePtr negation(NodePtr a);

/// Balanced fan-in-2 tree over `operands`; the left subtree receives the
/// extra operand when the count is odd.
NodePtr balanced(std::span<const NodePtr> operands, NodeKind op);

}  // namespace node

/// De Morgan formula over `num_vars` variables.
class Formula {
 public:
  Formula(NodePtr root, std::size_t num_vars,
          VarStyle style = VarStyle::Indexed);

  const NodePtr& root() const noexcept { return root_; }
  const FormulaNode& operator*() const noexcept { return *root_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  VarStyle style() const noexcept { return style_; }
  /// Selector count n when the style is `Mux` (num_vars = n + 2^n).
  std::size_t mux_selectors() const noexcept { return mux_n_; }

  Formula with_root(NodePtr root) const {
    return Formula(std::move(root), num_vars_, style_);
  }

 private:
  NodePtr root_;
  std::size_t num_vars_;
  VarStyle style_;
  std::size_t mux_n_ = 0;
};

/// Flattened evaluator: every distinct node is evaluated once per input, so
/// heavily shared formulas evaluate in time proportional to their DAG size.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f);

  std::size_t num_vars() const noexcept { return num_vars_; }
  Trit eval(std::span<const Trit> input) const;
  bool eval_bool(std::span<const bool> input) const;
  std::size_t dag_size() const noexcept { return program_.size(); }

 private:
  struct Instr {
    NodeKind kind;
    std::uint32_t a;  // child slot or variable index (0-based)
    std::uint32_t b;
    bool flag;  // negated / constant value
  };
  std::vector<Instr> program_;
  std::size_t num_vars_;
  mutable std::vector<Trit> scratch_;
};

Trit eval(const Formula& f, const TernaryWord& alpha);
bool eval(const Formula& f, const BoolWord& a);

std::uint64_t size(const Formula& f) noexcept;
std::uint32_t depth(const Formula& f) noexcept;
/// One plus the number of gate-type changes on the worst root-to-leaf path;
/// 0 for a bare literal. NOT nodes are pushed to the leaves first.
std::uint32_t alternation_depth(const Formula& f);

bool contains_not(const Formula& f);
bool is_monotone(const Formula& f);  // no negated literal and no NOT node

/// Pushes negations to the leaves with De Morgan's laws. Subtrees that are
/// already in normal form are returned as the same node.
Formula normalize(const Formula& f);
/// Normal form of ¬n.
NodePtr negated_normal(const NodePtr& n);

/// Replaces variables by constants (`nullopt` keeps the variable) and folds
/// constants away. Kleene-exact: 0∧X = 0, 1∧X = X, 0∨X = X, 1∨X = 1.
Formula substitute_constants(const Formula& f,
                             std::span<const std::optional<bool>> assignment);
NodePtr fold_constants(const NodePtr& n);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

/// S-expression syntax: `(and A B)`, `(or A B)`, `(not A)`, literals `s<i>`,
/// `s` (= s1), `x<j>`, `v<k>`, constants `0` and `1`. s/x names use the MUX
/// layout and cannot be mixed with `v<k>`. A wrong operand count throws
/// ArityError.
///
/// When `num_vars` is given it fixes the arity; otherwise it is inferred from
/// the largest variable mentioned (for s/x names, the smallest n whose MUX_n
/// layout holds every variable).
Formula parse_formula(std::string_view text,
                      std::optional<std::size_t> num_vars = std::nullopt);
std::string print(const Formula& f);
std::string variable_name(const Formula& f, std::uint32_t var);
std::string variable_name(VarStyle style, std::size_t num_vars,
                          std::uint32_t var);

/// Variable index of data input x_j of MUX_n.
constexpr std::uint32_t mux_data_var(std::size_t n, std::uint64_t j) noexcept {
  return static_cast<std::uint32_t>(n + 1 + j);
}
constexpr std::size_t mux_arity(std::size_t n) noexcept {
  return n + (std::size_t{1} << n);
}

}  // namespace hazkw

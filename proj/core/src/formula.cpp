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

#include "hazkw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "hazkw/errors.hpp"

namespace hazkw {

namespace {

std::uint32_t segments_below(const FormulaNode& child, NodeKind parent) {
  switch (child.kind) {
    case NodeKind::Leaf:
    case NodeKind::Const:
      return 1;
    case NodeKind::And:
    case NodeKind::Or:
      return child.alternations + (child.kind == parent ? 0 : 1);
    case NodeKind::Not:
      return child.alternations + 1;
  }
  return 1;
}

NodePtr make_gate(NodeKind kind, NodePtr a, NodePtr b) {
  if (!a || !b) throw std::invalid_argument("gate child is null");
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->leaves = a->leaves + b->leaves;
  n->height = 1 + std::max(a->height, b->height);
  n->alternations =
      std::max(segments_below(*a, kind), segments_below(*b, kind));
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

template <typename F>
void visit_unique(const NodePtr& root, F&& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack{root.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    f(*n);
    if (n->left) stack.push_back(n->left.get());
    if (n->right) stack.push_back(n->right.get());
  }
}

}  // namespace

namespace node {

NodePtr literal(std::uint32_t var, bool negated) {
  if (var == 0) throw std::invalid_argument("variable indices are 1-based");
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::Leaf;
  n->var = var;
  n->negated = negated;
  return n;
}

NodePtr constant(bool value) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::Const;
  n->value = value;
  return n;
}

NodePtr conj(NodePtr a, NodePtr b) {
  return make_gate(NodeKind::And, std::move(a), std::move(b));
}

NodePtr disj(NodePtr a, NodePtr b) {
  return make_gate(NodeKind::Or, std::move(a), std::move(b));
}

NodePtr negation(NodePtr a) {
  if (!a) throw std::invalid_argument("negation child is null");
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::Not;
  n->leaves = a->leaves;
  n->height = a->height + 1;
  n->alternations = a->alternations;
  n->left = std::move(a);
  return n;
}

NodePtr balanced(std::span<const NodePtr> operands, NodeKind op) {
  if (op != NodeKind::And && op != NodeKind::Or)
    throw std::invalid_argument("balanced() needs AND or OR");
  if (operands.empty())
    return constant(op == NodeKind::And);
  if (operands.size() == 1) return operands[0];
  const std::size_t half = (operands.size() + 1) / 2;
  return make_gate(op, balanced(operands.first(half), op),
                   balanced(operands.subspan(half), op));
}

}  // namespace node

Formula::Formula(NodePtr root, std::size_t num_vars, VarStyle style)
    : root_(std::move(root)), num_vars_(num_vars), style_(style) {
  if (!root_) throw std::invalid_argument("formula root is null");
  if (style_ == VarStyle::Mux) {
    std::size_t n = 0;
    while (n < 31 && mux_arity(n) < num_vars_) ++n;
    if (n == 0 || mux_arity(n) != num_vars_)
      throw ArityError("MUX-style formula needs n + 2^n variables, got " +
                       std::to_string(num_vars_));
    mux_n_ = n;
  }
  visit_unique(root_, [&](const FormulaNode& n) {
    if (n.kind == NodeKind::Leaf && n.var > num_vars_)
      throw ArityError("variable index " + std::to_string(n.var) +
                       " exceeds arity " + std::to_string(num_vars_));
  });
}

CompiledFormula::CompiledFormula(const Formula& f) : num_vars_(f.num_vars()) {
  // Iterative post-order over the DAG; every distinct node gets one slot.
  std::unordered_map<const FormulaNode*, std::uint32_t> slot;
  std::vector<std::pair<const FormulaNode*, bool>> stack{{f.root().get(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (slot.count(n)) continue;
    if (!expanded) {
      stack.emplace_back(n, true);
      if (n->right) stack.emplace_back(n->right.get(), false);
      if (n->left) stack.emplace_back(n->left.get(), false);
      continue;
    }
    Instr ins{n->kind, 0, 0, false};
    switch (n->kind) {
      case NodeKind::Leaf:
        ins.a = n->var - 1;
        ins.flag = n->negated;
        break;
      case NodeKind::Const:
        ins.flag = n->value;
        break;
      case NodeKind::Not:
        ins.a = slot.at(n->left.get());
        break;
      case NodeKind::And:
      case NodeKind::Or:
        ins.a = slot.at(n->left.get());
        ins.b = slot.at(n->right.get());
        break;
    }
    slot.emplace(n, static_cast<std::uint32_t>(program_.size()));
    program_.push_back(ins);
  }
  scratch_.resize(program_.size());
}

Trit CompiledFormula::eval(std::span<const Trit> input) const {
  if (input.size() != num_vars_)
    throw ArityError("input has " + std::to_string(input.size()) +
                     " variables, formula has " + std::to_string(num_vars_));
  // Not thread-safe on one instance; copy the evaluator per thread.
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const Instr& ins = program_[i];
    Trit v = Trit::Zero;
    switch (ins.kind) {
      case NodeKind::Leaf:
        v = ins.flag ? trit_not(input[ins.a]) : input[ins.a];
        break;
      case NodeKind::Const:
        v = trit_of(ins.flag);
        break;
      case NodeKind::Not:
        v = trit_not(scratch_[ins.a]);
        break;
      case NodeKind::And:
        v = trit_and(scratch_[ins.a], scratch_[ins.b]);
        break;
      case NodeKind::Or:
        v = trit_or(scratch_[ins.a], scratch_[ins.b]);
        break;
    }
    scratch_[i] = v;
  }
  return scratch_.back();
}

bool CompiledFormula::eval_bool(std::span<const bool> input) const {
  std::vector<Trit> t(input.size());
  std::transform(input.begin(), input.end(), t.begin(), trit_of);
  return eval(t) == Trit::One;
}

Trit eval(const Formula& f, const TernaryWord& alpha) {
  if (alpha.size() != f.num_vars())
    throw ArityError("word length " + std::to_string(alpha.size()) +
                     " does not match formula arity " +
                     std::to_string(f.num_vars()));
  return CompiledFormula(f).eval(alpha.trits());
}

bool eval(const Formula& f, const BoolWord& a) {
  return eval(f, a.to_ternary()) == Trit::One;
}

std::uint64_t size(const Formula& f) noexcept { return f.root()->leaves; }
std::uint32_t depth(const Formula& f) noexcept { return f.root()->height; }

std::uint32_t alternation_depth(const Formula& f) {
  const Formula g = contains_not(f) ? normalize(f) : f;
  return g.root()->alternations;
}

bool contains_not(const Formula& f) {
  bool found = false;
  visit_unique(f.root(), [&](const FormulaNode& n) {
    found = found || n.kind == NodeKind::Not;
  });
  return found;
}

bool is_monotone(const Formula& f) {
  bool ok = true;
  visit_unique(f.root(), [&](const FormulaNode& n) {
    if (n.kind == NodeKind::Not || (n.kind == NodeKind::Leaf && n.negated))
      ok = false;
  });
  return ok;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const FormulaNode*, bool>& p) const {
    return std::hash<const void*>()(p.first) ^ (p.second ? 0x9e3779b9u : 0u);
  }
};

class Normalizer {
 public:
  NodePtr run(const NodePtr& n, bool negate) {
    auto key = std::make_pair(n.get(), negate);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    NodePtr out;
    switch (n->kind) {
      case NodeKind::Leaf:
        out = negate ? node::literal(n->var, !n->negated) : n;
        break;
      case NodeKind::Const:
        out = negate ? node::constant(!n->value) : n;
        break;
      case NodeKind::Not:
        out = run(n->left, !negate);
        break;
      case NodeKind::And:
      case NodeKind::Or: {
        NodePtr l = run(n->left, negate);
        NodePtr r = run(n->right, negate);
        if (!negate && l == n->left && r == n->right) {
          out = n;
        } else {
          const bool is_and = (n->kind == NodeKind::And) != negate;
          out = is_and ? node::conj(l, r) : node::disj(l, r);
        }
        break;
      }
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::unordered_map<std::pair<const FormulaNode*, bool>, NodePtr, PairHash>
      memo_;
};

class Folder {
 public:
  explicit Folder(std::span<const std::optional<bool>> assignment)
      : assignment_(assignment) {}

  NodePtr run(const NodePtr& n) {
    if (auto it = memo_.find(n.get()); it != memo_.end()) return it->second;
    NodePtr out;
    switch (n->kind) {
      case NodeKind::Leaf:
        if (n->var - 1 < assignment_.size() && assignment_[n->var - 1]) {
          out = node::constant(*assignment_[n->var - 1] != n->negated);
        } else {
          out = n;
        }
        break;
      case NodeKind::Const:
        out = n;
        break;
      case NodeKind::Not: {
        NodePtr c = run(n->left);
        if (c->kind == NodeKind::Const) {
          out = node::constant(!c->value);
        } else {
          out = c == n->left ? n : node::negation(c);
        }
        break;
      }
      case NodeKind::And:
      case NodeKind::Or: {
        const bool is_and = n->kind == NodeKind::And;
        NodePtr l = run(n->left);
        NodePtr r = run(n->right);
        // Absorbing constant: 0 for AND, 1 for OR.
        auto absorbs = [&](const NodePtr& c) {
          return c->kind == NodeKind::Const && c->value != is_and;
        };
        auto neutral = [&](const NodePtr& c) {
          return c->kind == NodeKind::Const && c->value == is_and;
        };
        if (absorbs(l)) {
          out = l;
        } else if (absorbs(r)) {
          out = r;
        } else if (neutral(l)) {
          out = r;
        } else if (neutral(r)) {
          out = l;
        } else if (l == n->left && r == n->right) {
          out = n;
        } else {
          out = is_and ? node::conj(l, r) : node::disj(l, r);
        }
        break;
      }
    }
    memo_.emplace(n.get(), out);
    return out;
  }

 private:
  std::span<const std::optional<bool>> assignment_;
  std::unordered_map<const FormulaNode*, NodePtr> memo_;
};

}  // namespace

Formula normalize(const Formula& f) {
  Normalizer norm;
  return f.with_root(norm.run(f.root(), false));
}

NodePtr negated_normal(const NodePtr& n) {
  Normalizer norm;
  return norm.run(n, true);
}

Formula substitute_constants(const Formula& f,
                             std::span<const std::optional<bool>> assignment) {
  if (assignment.size() != f.num_vars())
    throw ArityError("assignment length does not match formula arity");
  Folder folder(assignment);
  return f.with_root(folder.run(f.root()));
}

NodePtr fold_constants(const NodePtr& n) {
  Folder folder({});
  return folder.run(n);
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Leaf:
      return a->var == b->var && a->negated == b->negated;
    case NodeKind::Const:
      return a->value == b->value;
    case NodeKind::Not:
      return structurally_equal(a->left, b->left);
    case NodeKind::And:
    case NodeKind::Or:
      return a->leaves == b->leaves &&
             structurally_equal(a->left, b->left) &&
             structurally_equal(a->right, b->right);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct RawVar {
  char prefix;  // 's', 'x' or 'v'
  std::uint64_t index;
  std::size_t position;
};

struct RawNode {
  NodeKind kind;
  std::size_t var_slot = 0;  // into Parser::vars_
  bool value = false;
  std::vector<RawNode> children;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RawNode parse_all() {
    RawNode root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return root;
  }

  const std::vector<RawVar>& vars() const { return vars_; }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  RawNode parse_expr() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == ')') throw ParseError("unexpected ')'", pos_);
    if (text_[pos_] != '(') return parse_atom();

    const std::size_t open = pos_++;
    skip_ws();
    const std::size_t op_pos = pos_;
    const std::string_view op = atom();
    RawNode n;
    std::size_t arity = 2;
    if (op == "and") {
      n.kind = NodeKind::And;
    } else if (op == "or") {
      n.kind = NodeKind::Or;
    } else if (op == "not") {
      n.kind = NodeKind::Not;
      arity = 1;
    } else {
      throw ParseError("unknown operator '" + std::string(op) + "'", op_pos);
    }
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unclosed '('", open);
      if (text_[pos_] == ')') break;
      n.children.push_back(parse_expr());
    }
    if (n.children.size() != arity)
      throw ArityError("'" + std::string(op) + "' takes " +
                       std::to_string(arity) + " operand(s), got " +
                       std::to_string(n.children.size()) + " at position " +
                       std::to_string(open));
    ++pos_;
    return n;
  }

  RawNode parse_atom() {
    const std::size_t start = pos_;
    const std::string_view a = atom();
    RawNode n;
    if (a == "0" || a == "1") {
      n.kind = NodeKind::Const;
      n.value = a == "1";
      return n;
    }
    const char prefix = a.empty() ? '\0' : a[0];
    if (prefix != 's' && prefix != 'x' && prefix != 'v')
      throw ParseError("unknown variable '" + std::string(a) + "'", start);
    std::uint64_t index = 1;
    if (a.size() > 1) {
      auto [ptr, ec] = std::from_chars(a.data() + 1, a.data() + a.size(), index);
      if (ec != std::errc() || ptr != a.data() + a.size())
        throw ParseError("unknown variable '" + std::string(a) + "'", start);
    } else if (prefix != 's') {
      throw ParseError("unknown variable '" + std::string(a) + "'", start);
    }
    if (index == 0 && prefix != 'x')
      throw ParseError("variable '" + std::string(a) + "' must be 1-based",
                       start);
    n.kind = NodeKind::Leaf;
    n.var_slot = vars_.size();
    vars_.push_back({prefix, index, start});
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawVar> vars_;
};

NodePtr build(const RawNode& raw, const std::vector<std::uint32_t>& index) {
  switch (raw.kind) {
    case NodeKind::Leaf:
      return node::literal(index[raw.var_slot]);
    case NodeKind::Const:
      return node::constant(raw.value);
    case NodeKind::Not: {
      NodePtr c = build(raw.children[0], index);
      // A negated variable is a literal, not a NOT gate.
      if (c->kind == NodeKind::Leaf) return node::literal(c->var, !c->negated);
      return node::negation(std::move(c));
    }
    case NodeKind::And:
      return node::conj(build(raw.children[0], index),
                        build(raw.children[1], index));
    case NodeKind::Or:
      return node::disj(build(raw.children[0], index),
                        build(raw.children[1], index));
  }
  return nullptr;
}

void print_node(const Formula& f, const FormulaNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Leaf:
      if (n.negated) {
        out += "(not ";
        out += variable_name(f, n.var);
        out += ')';
      } else {
        out += variable_name(f, n.var);
      }
      return;
    case NodeKind::Const:
      out += n.value ? '1' : '0';
      return;
    case NodeKind::Not:
      out += "(not ";
      print_node(f, *n.left, out);
      out += ')';
      return;
    case NodeKind::And:
    case NodeKind::Or:
      out += n.kind == NodeKind::And ? "(and " : "(or ";
      print_node(f, *n.left, out);
      out += ' ';
      print_node(f, *n.right, out);
      out += ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text,
                      std::optional<std::size_t> num_vars) {
  Parser parser(text);
  const RawNode raw = parser.parse_all();
  const auto& vars = parser.vars();

  // Any s/x name selects the MUX layout.
  const bool mux = std::any_of(vars.begin(), vars.end(),
                               [](const RawVar& v) { return v.prefix != 'v'; });
  if (mux) {
    for (const RawVar& v : vars)
      if (v.prefix == 'v')
        throw ParseError("cannot mix v<k> with s/x variable names", v.position);
  }

  std::size_t n_sel = 0;
  std::size_t arity = 0;
  if (mux) {
    if (num_vars) {
      while (n_sel < 31 && mux_arity(n_sel) < *num_vars) ++n_sel;
      if (n_sel == 0 || mux_arity(n_sel) != *num_vars)
        throw ArityError("s/x variable names need n + 2^n variables");
    } else {
      n_sel = 1;
      for (const RawVar& v : vars) {
        if (v.prefix == 's') n_sel = std::max<std::size_t>(n_sel, v.index);
        while (v.prefix == 'x' && (std::uint64_t{1} << n_sel) <= v.index)
          ++n_sel;
      }
    }
    arity = mux_arity(n_sel);
  } else {
    for (const RawVar& v : vars) arity = std::max<std::size_t>(arity, v.index);
    if (num_vars) arity = *num_vars;
  }

  std::vector<std::uint32_t> index;
  index.reserve(vars.size());
  for (const RawVar& v : vars) {
    std::uint64_t k = v.index;
    if (mux) {
      const bool bad = v.prefix == 's' ? k > n_sel
                                       : k >= (std::uint64_t{1} << n_sel);
      if (bad)
        throw ParseError("variable out of range for MUX_" +
                             std::to_string(n_sel),
                         v.position);
      if (v.prefix == 'x') k = mux_data_var(n_sel, k);
    } else if (k > arity) {
      throw ParseError("variable index exceeds arity " + std::to_string(arity),
                       v.position);
    }
    index.push_back(static_cast<std::uint32_t>(k));
  }
  if (arity == 0) arity = 1;  // constant-only formula
  return Formula(build(raw, index), arity,
                 mux ? VarStyle::Mux : VarStyle::Indexed);
}

std::string variable_name(VarStyle style, std::size_t num_vars,
                          std::uint32_t var) {
  if (style == VarStyle::Mux) {
    std::size_t n = 1;
    while (n < 31 && mux_arity(n) < num_vars) ++n;
    if (var <= n) return n == 1 ? "s" : "s" + std::to_string(var);
    return "x" + std::to_string(var - n - 1);
  }
  return "v" + std::to_string(var);
}

std::string variable_name(const Formula& f, std::uint32_t var) {
  return variable_name(f.style(), f.num_vars(), var);
}

std::string print(const Formula& f) {
  std::string out;
  print_node(f, *f.root(), out);
  return out;
}

}  // namespace hazkw

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

#include "hazkw/transforms.hpp"

#include <algorithm>
#include <bit>

#include "hazkw/implicants.hpp"

namespace hazkw {

// ---------------------------------------------------------------------------
// Depth reduction

namespace {

std::size_t ceil_log2(std::uint64_t k) {
  std::size_t r = 0;
  while ((std::uint64_t{1} << r) < k) ++r;
  return r;
}

NodePtr rebuild_gate(const FormulaNode& g, NodePtr left, NodePtr right) {
  return g.kind == NodeKind::And ? node::conj(std::move(left), std::move(right))
                                 : node::disj(std::move(left), std::move(right));
}

// Copy of `n` with the node at `path` (false = left) replaced.
NodePtr replace_at(const NodePtr& n, const std::vector<bool>& path,
                   std::size_t at, const NodePtr& replacement) {
  if (at == path.size()) return replacement;
  if (path[at])
    return rebuild_gate(*n, n->left, replace_at(n->right, path, at + 1, replacement));
  return rebuild_gate(*n, replace_at(n->left, path, at + 1, replacement), n->right);
}

NodePtr reduce(const NodePtr& f) {
  const std::uint64_t m = f->leaves;
  if (m <= 3 || f->height <= ceil_log2(m) + 1) return f;

  // Deepest node holding at least half of the leaves.
  const std::uint64_t half = (m + 1) / 2;
  std::vector<bool> path;
  const FormulaNode* g = f.get();
  NodePtr g_ptr = f;
  for (;;) {
    if (g->kind != NodeKind::And && g->kind != NodeKind::Or) break;
    if (g->left->leaves >= half) {
      path.push_back(false);
      g_ptr = g->left;
    } else if (g->right->leaves >= half) {
      path.push_back(true);
      g_ptr = g->right;
    } else {
      break;
    }
    g = g_ptr.get();
  }
  if (g->kind != NodeKind::And && g->kind != NodeKind::Or) return f;

  const NodePtr g_red =
      rebuild_gate(*g, reduce(g->left), reduce(g->right));
  const NodePtr f0 =
      reduce(fold_constants(replace_at(f, path, 0, node::constant(false))));
  const NodePtr f1 =
      reduce(fold_constants(replace_at(f, path, 0, node::constant(true))));
  // Hazard-free MUX_1 skeleton: (F0 ∧ (F1 ∨ ¬G)) ∨ (F1 ∧ G).
  NodePtr out = node::disj(node::conj(f0, node::disj(f1, negated_normal(g_red))),
                           node::conj(f1, g_red));
  return fold_constants(out);
}

}  // namespace

Formula depth_reduce(const Formula& f) {
  const Formula normal = normalize(f);
  return normal.with_root(reduce(normal.root()));
}

// ---------------------------------------------------------------------------
// Limited matrices

CommMatrix limited_matrix(const TruthTable& f, std::vector<TernaryWord> rows,
                          std::vector<TernaryWord> cols) {
  const std::size_t n = f.num_vars();
  for (const TernaryWord& r : rows) {
    if (r.size() != n) throw ArityError("row " + r.str() + " has wrong arity");
    if (hfe_eval(f, r) != Trit::One)
      throw PreconditionError("row " + r.str() + " is not an implicant");
  }
  for (const TernaryWord& c : cols) {
    if (c.size() != n) throw ArityError("column " + c.str() + " has wrong arity");
    if (hfe_eval(f, c) != Trit::Zero)
      throw PreconditionError("column " + c.str() + " is not an implicate");
  }
  for (std::uint64_t j = 0; j < f.rows(); ++j) {
    const BoolWord a = BoolWord::from_index(n, j);
    const auto& pool = f(j) ? rows : cols;
    const bool covered =
        std::any_of(pool.begin(), pool.end(),
                    [&](const TernaryWord& w) { return is_resolution(a, w); });
    if (!covered)
      throw PreconditionError("input " + a.str() + " is not covered by any " +
                              (f(j) ? "row" : "column"));
  }
  return CommMatrix(std::move(rows), std::move(cols));
}

// ---------------------------------------------------------------------------
// k-bit hazard-free construction

KbitBounds kbit_bounds(std::size_t n, std::size_t k, std::uint64_t base_size,
                       std::uint64_t base_depth) {
  KbitBounds b;
  std::uint64_t binom = 1;
  for (std::size_t i = 0; i <= k && i <= n; ++i) {
    b.subsets += binom;
    binom = binom * (n - i) / (i + 1);
  }
  b.max_size = b.subsets * b.subsets * (std::uint64_t{1} << (2 * k)) * base_size;
  b.max_depth = 2 * ceil_log2(b.subsets) + 2 * k + base_depth;
  return b;
}

namespace {

using Index = std::vector<std::size_t>;

ProtocolPtr alice(ProtocolPtr a, ProtocolPtr b) {
  if (!a) return b;
  if (!b) return a;
  return make_turn(Turn::Alice, std::move(a), std::move(b));
}

ProtocolPtr bob(ProtocolPtr a, ProtocolPtr b) {
  if (!a) return b;
  if (!b) return a;
  return make_turn(Turn::Bob, std::move(a), std::move(b));
}

// Bit i-1 of a mask stands for coordinate i.
struct WordMasks {
  std::uint64_t unstable = 0;
  std::uint64_t ones = 0;
};

WordMasks masks_of(const TernaryWord& w) {
  WordMasks m;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Trit::U) m.unstable |= std::uint64_t{1} << i;
    if (w[i] == Trit::One) m.ones |= std::uint64_t{1} << i;
  }
  return m;
}

bool eval_bool(const FormulaNode& g, std::uint64_t bits) {
  switch (g.kind) {
    case NodeKind::Leaf:
      return (((bits >> (g.var - 1)) & 1) != 0) != g.negated;
    case NodeKind::Const:
      return g.value;
    case NodeKind::Not:
      return !eval_bool(*g.left, bits);
    case NodeKind::And:
      return eval_bool(*g.left, bits) && eval_bool(*g.right, bits);
    case NodeKind::Or:
      return eval_bool(*g.left, bits) || eval_bool(*g.right, bits);
  }
  return false;
}

class KbitBuilder {
 public:
  KbitBuilder(const CommMatrix& m, std::size_t k, const FormulaNode& base)
      : m_(m), base_(base) {
    const std::size_t n = m.num_vars();
    for (std::size_t size = 0; size <= k; ++size)
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        if (static_cast<std::size_t>(std::popcount(s)) == size)
          subsets_.push_back(s);
    for (const auto& w : m.rows()) rows_.push_back(masks_of(w));
    for (const auto& w : m.cols()) cols_.push_back(masks_of(w));
  }

  std::size_t subset_count() const { return subsets_.size(); }

  ProtocolPtr build(const Index& rows, const Index& cols) {
    return send_set(rows, cols, 0, subsets_.size(), true, 0);
  }

 private:
  std::size_t subset_index(std::uint64_t s) const {
    return static_cast<std::size_t>(
        std::lower_bound(subsets_.begin(), subsets_.end(), s,
                         [](std::uint64_t a, std::uint64_t b) {
                           const int pa = std::popcount(a), pb = std::popcount(b);
                           return pa != pb ? pa < pb : a < b;
                         }) -
        subsets_.begin());
  }

  // Phases 1 and 2: the sender bisects the index range of its u-set.
  ProtocolPtr send_set(const Index& rows, const Index& cols, std::size_t lo,
                       std::size_t hi, bool alice_sends, std::uint64_t a_set) {
    if (rows.empty() || cols.empty()) return nullptr;
    if (hi - lo == 1) {
      if (alice_sends)
        return send_set(rows, cols, 0, subsets_.size(), false, subsets_[lo]);
      return send_bob_bits(rows, cols, a_set, subsets_[lo], 0, 0);
    }
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    Index low, high;
    const Index& pool = alice_sends ? rows : cols;
    for (std::size_t i : pool) {
      const std::uint64_t u =
          alice_sends ? rows_[i].unstable : cols_[i].unstable;
      (subset_index(u) < mid ? low : high).push_back(i);
    }
    if (alice_sends)
      return alice(send_set(low, cols, lo, mid, true, a_set),
                   send_set(high, cols, mid, hi, true, a_set));
    return bob(send_set(rows, low, lo, mid, false, a_set),
               send_set(rows, high, mid, hi, false, a_set));
  }

  // Phase 2 (continued): Bob's bits on A∖B, increasing positions.
  ProtocolPtr send_bob_bits(const Index& rows, const Index& cols,
                            std::uint64_t a_set, std::uint64_t b_set,
                            std::uint64_t beta_bits, std::uint64_t sent) {
    if (rows.empty() || cols.empty()) return nullptr;
    const std::uint64_t pending = a_set & ~b_set & ~sent;
    if (pending == 0)
      return send_alice_bits(rows, cols, a_set, b_set, beta_bits, 0, 0);
    const std::uint64_t bit = pending & (~pending + 1);
    Index zero, one;
    for (std::size_t c : cols) (cols_[c].ones & bit ? one : zero).push_back(c);
    return bob(send_bob_bits(rows, zero, a_set, b_set, beta_bits, sent | bit),
               send_bob_bits(rows, one, a_set, b_set, beta_bits | bit,
                             sent | bit));
  }

  // Phase 3: Alice's bits on B∖A, increasing positions.
  ProtocolPtr send_alice_bits(const Index& rows, const Index& cols,
                              std::uint64_t a_set, std::uint64_t b_set,
                              std::uint64_t beta_bits, std::uint64_t alpha_bits,
                              std::uint64_t sent) {
    if (rows.empty() || cols.empty()) return nullptr;
    const std::uint64_t pending = b_set & ~a_set & ~sent;
    if (pending == 0) {
      // Phase 4: Boolean inputs with A∩B fixed to 0.
      std::vector<std::uint64_t> a(m_.num_rows()), b(m_.num_cols());
      for (std::size_t r : rows) a[r] = (rows_[r].ones & ~a_set) | beta_bits;
      for (std::size_t c : cols) b[c] = (cols_[c].ones & ~b_set) | alpha_bits;
      return classical(base_, rows, cols, a, b);
    }
    const std::uint64_t bit = pending & (~pending + 1);
    Index zero, one;
    for (std::size_t r : rows) (rows_[r].ones & bit ? one : zero).push_back(r);
    return alice(send_alice_bits(zero, cols, a_set, b_set, beta_bits,
                                 alpha_bits, sent | bit),
                 send_alice_bits(one, cols, a_set, b_set, beta_bits,
                                 alpha_bits | bit, sent | bit));
  }

  ProtocolPtr classical(const FormulaNode& g, const Index& rows,
                        const Index& cols, const std::vector<std::uint64_t>& a,
                        const std::vector<std::uint64_t>& b) {
    if (rows.empty() || cols.empty()) return nullptr;
    switch (g.kind) {
      case NodeKind::Leaf:
        return make_leaf(rows, cols, g.var,
                         g.negated ? LeafPolarity::Row0 : LeafPolarity::Row1);
      case NodeKind::Or: {
        Index left, right;
        for (std::size_t r : rows)
          (eval_bool(*g.right, a[r]) ? right : left).push_back(r);
        return alice(classical(*g.left, left, cols, a, b),
                     classical(*g.right, right, cols, a, b));
      }
      case NodeKind::And: {
        Index left, right;
        for (std::size_t c : cols)
          (!eval_bool(*g.right, b[c]) ? right : left).push_back(c);
        return bob(classical(*g.left, rows, left, a, b),
                   classical(*g.right, rows, right, a, b));
      }
      case NodeKind::Const:
      case NodeKind::Not:
        break;
    }
    throw PreconditionError("base formula cannot finish the classical game");
  }

  const CommMatrix& m_;
  const FormulaNode& base_;
  std::vector<std::uint64_t> subsets_;
  std::vector<WordMasks> rows_;
  std::vector<WordMasks> cols_;
};

void check_computes(const Formula& base, const TruthTable& f) {
  const TruthTable g = TruthTable::of_formula(base);
  for (std::uint64_t j = 0; j < f.rows(); ++j)
    if (g(j) != f(j))
      throw FunctionalError(BoolWord::from_index(f.num_vars(), j));
}

Index iota_index(std::size_t count) {
  Index v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i;
  return v;
}

}  // namespace

KbitConstruction kbit_construction(const TruthTable& f, std::size_t k,
                                   const Formula& base) {
  const std::size_t n = f.num_vars();
  if (base.num_vars() != n)
    throw ArityError("base formula and truth table differ in arity");
  if (k > n) throw std::invalid_argument("k exceeds the number of variables");
  check_computes(base, f);
  const ExtensionTable ext(f);
  CommMatrix m(implicants_up_to(ext, Polarity::Implicant, k).words,
               implicants_up_to(ext, Polarity::Implicate, k).words);
  if (m.num_rows() == 0 || m.num_cols() == 0)
    throw PreconditionError("constant function has no game to play");
  const Formula normal = normalize(base);
  KbitBuilder builder(m, k, *normal.root());
  ProtocolPtr root = builder.build(iota_index(m.num_rows()),
                                   iota_index(m.num_cols()));
  ProtocolTree p(std::move(root), n, base.style());
  Formula formula = protocol_to_formula(p);
  return KbitConstruction{std::move(m), std::move(p), std::move(formula)};
}

Formula kbit_hazard_free(const TruthTable& f, std::size_t k,
                         const Formula& base) {
  if (f.is_constant()) {
    if (base.num_vars() != f.num_vars())
      throw ArityError("base formula and truth table differ in arity");
    check_computes(base, f);
    return base.with_root(node::constant(f(std::uint64_t{0})));
  }
  return kbit_construction(f, k, base).formula;
}

}  // namespace hazkw

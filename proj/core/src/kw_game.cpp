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

#include "hazkw/kw_game.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "json.hpp"

namespace hazkw {

using nlohmann::json;

// ---------------------------------------------------------------------------
// CommMatrix

CommMatrix::CommMatrix(std::vector<TernaryWord> rows,
                       std::vector<TernaryWord> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  if (!rows_.empty()) {
    n_ = rows_.front().size();
  } else if (!cols_.empty()) {
    n_ = cols_.front().size();
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != n_) throw ArityError("matrix rows differ in length");
    if (!row_lookup_.emplace(rows_[r].str(), r).second)
      throw PreconditionError("duplicate row " + rows_[r].str());
  }
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (cols_[c].size() != n_)
      throw ArityError("matrix columns differ in length");
    if (!col_lookup_.emplace(cols_[c].str(), c).second)
      throw PreconditionError("duplicate column " + cols_[c].str());
  }
}

std::vector<std::size_t> CommMatrix::cell(std::size_t r, std::size_t c) const {
  const TernaryWord& a = rows_.at(r);
  const TernaryWord& b = cols_.at(c);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (is_stable(a[i]) && is_stable(b[i]) && a[i] != b[i]) out.push_back(i + 1);
  return out;
}

bool CommMatrix::cell_contains(std::size_t r, std::size_t c,
                               std::size_t coord) const {
  if (coord == 0 || coord > n_) return false;
  const Trit a = rows_.at(r)[coord - 1];
  const Trit b = cols_.at(c)[coord - 1];
  return is_stable(a) && is_stable(b) && a != b;
}

std::optional<std::size_t> CommMatrix::row_index(const TernaryWord& w) const {
  auto it = row_lookup_.find(w.str());
  if (it == row_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CommMatrix::col_index(const TernaryWord& w) const {
  auto it = col_lookup_.find(w.str());
  if (it == col_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::size_t, std::size_t>> CommMatrix::find_empty_cell()
    const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      bool any = false;
      for (std::size_t i = 1; i <= n_ && !any; ++i) any = cell_contains(r, c, i);
      if (!any) return std::make_pair(r, c);
    }
  }
  return std::nullopt;
}

CommMatrix build_matrix(const TruthTable& f) {
  const ExtensionTable ext(f);
  CommMatrix m(prime_implicants(ext).words, prime_implicates(ext).words);
  if (auto empty = m.find_empty_cell())
    throw PreconditionError("empty cell at (" + m.row(empty->first).str() +
                            ", " + m.col(empty->second).str() + ")");
  return m;
}

// ---------------------------------------------------------------------------
// ProtocolTree

namespace {

std::vector<std::size_t> merge_sorted(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ProtocolPtr make_leaf(std::vector<std::size_t> rows,
                      std::vector<std::size_t> cols, std::size_t coord,
                      LeafPolarity polarity) {
  auto n = std::make_shared<ProtocolNode>();
  n->turn = Turn::Leaf;
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  n->rows = std::move(rows);
  n->cols = std::move(cols);
  n->coord = coord;
  n->polarity = polarity;
  return n;
}

ProtocolPtr make_turn(Turn turn, ProtocolPtr left, ProtocolPtr right) {
  if (turn == Turn::Leaf || !left || !right)
    throw std::invalid_argument("make_turn needs Alice/Bob and two children");
  auto n = std::make_shared<ProtocolNode>();
  n->turn = turn;
  if (turn == Turn::Alice) {
    n->rows = merge_sorted(left->rows, right->rows);
    n->cols = left->cols;
  } else {
    n->rows = left->rows;
    n->cols = merge_sorted(left->cols, right->cols);
  }
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

ProtocolTree::ProtocolTree(ProtocolPtr root, std::size_t num_vars,
                           VarStyle style)
    : root_(std::move(root)), num_vars_(num_vars), style_(style) {
  if (!root_) throw std::invalid_argument("protocol root is null");
}

namespace {

std::size_t count_leaves(const ProtocolNode& n) {
  if (n.turn == Turn::Leaf) return 1;
  return count_leaves(*n.left) + count_leaves(*n.right);
}

std::size_t tree_depth(const ProtocolNode& n) {
  if (n.turn == Turn::Leaf) return 0;
  return 1 + std::max(tree_depth(*n.left), tree_depth(*n.right));
}

}  // namespace

std::size_t ProtocolTree::leaves() const { return count_leaves(*root_); }
std::size_t ProtocolTree::depth() const { return tree_depth(*root_); }

// ---------------------------------------------------------------------------
// Formula → protocol

namespace {

// Value of every formula node on every word of a list.
class NodeValues {
 public:
  explicit NodeValues(const std::vector<TernaryWord>& words) : words_(words) {}

  const std::vector<Trit>& of(const FormulaNode& n) {
    if (auto it = memo_.find(&n); it != memo_.end()) return it->second;
    std::vector<Trit> v(words_.size());
    switch (n.kind) {
      case NodeKind::Leaf:
        for (std::size_t w = 0; w < words_.size(); ++w) {
          const Trit t = words_[w][n.var - 1];
          v[w] = n.negated ? trit_not(t) : t;
        }
        break;
      case NodeKind::Const:
        std::fill(v.begin(), v.end(), trit_of(n.value));
        break;
      case NodeKind::Not: {
        const auto& c = of(*n.left);
        for (std::size_t w = 0; w < v.size(); ++w) v[w] = trit_not(c[w]);
        break;
      }
      case NodeKind::And:
      case NodeKind::Or: {
        const auto& a = of(*n.left);
        const auto& b = of(*n.right);
        for (std::size_t w = 0; w < v.size(); ++w)
          v[w] = n.kind == NodeKind::And ? trit_and(a[w], b[w])
                                         : trit_or(a[w], b[w]);
        break;
      }
    }
    return memo_.emplace(&n, std::move(v)).first->second;
  }

 private:
  const std::vector<TernaryWord>& words_;
  std::unordered_map<const FormulaNode*, std::vector<Trit>> memo_;
};

class ProtocolBuilder {
 public:
  ProtocolBuilder(const CommMatrix& m)
      : m_(m), row_values_(m.rows()), col_values_(m.cols()) {}

  ProtocolPtr walk(const FormulaNode& g, std::vector<std::size_t> rows,
                   std::vector<std::size_t> cols) {
    switch (g.kind) {
      case NodeKind::Leaf:
        return make_leaf(std::move(rows), std::move(cols), g.var,
                         g.negated ? LeafPolarity::Row0 : LeafPolarity::Row1);
      case NodeKind::Const:
        if (rows.empty() || cols.empty()) break;
        throw PreconditionError(
            "constant leaf cannot answer the game: formula is not hazard-free "
            "for this matrix");
      case NodeKind::Not:
        throw PreconditionError("formula must be in De Morgan normal form");
      case NodeKind::Or: {
        // Alice: rows where the right child is 1 go right.
        const auto& lv = row_values_.of(*g.left);
        const auto& rv = row_values_.of(*g.right);
        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
          if (rv[r] == Trit::One) {
            right.push_back(r);
          } else if (lv[r] == Trit::One) {
            left.push_back(r);
          } else {
            throw stuck("Alice", m_.row(r));
          }
        }
        return make_turn(Turn::Alice, walk(*g.left, std::move(left), cols),
                         walk(*g.right, std::move(right), cols));
      }
      case NodeKind::And: {
        const auto& lv = col_values_.of(*g.left);
        const auto& rv = col_values_.of(*g.right);
        std::vector<std::size_t> left, right;
        for (std::size_t c : cols) {
          if (rv[c] == Trit::Zero) {
            right.push_back(c);
          } else if (lv[c] == Trit::Zero) {
            left.push_back(c);
          } else {
            throw stuck("Bob", m_.col(c));
          }
        }
        return make_turn(Turn::Bob, walk(*g.left, rows, std::move(left)),
                         walk(*g.right, rows, std::move(right)));
      }
    }
    // Constant over an empty rectangle: any label is vacuously valid.
    return make_leaf(std::move(rows), std::move(cols), 1, LeafPolarity::Row1);
  }

 private:
  static PreconditionError stuck(const char* who, const TernaryWord& w) {
    return PreconditionError(std::string(who) + " is stuck on input " +
                             w.str() + ": formula is not hazard-free");
  }

  const CommMatrix& m_;
  NodeValues row_values_;
  NodeValues col_values_;
};

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

ProtocolTree formula_to_protocol(const Formula& formula, const CommMatrix& m) {
  if (formula.num_vars() != m.num_vars())
    throw ArityError("formula and matrix differ in arity");
  const Formula f = normalize(formula);
  ProtocolBuilder builder(m);
  // Root invariant: the formula is 1 on every row and 0 on every column.
  NodeValues rows(m.rows());
  NodeValues cols(m.cols());
  const auto& rv = rows.of(*f.root());
  const auto& cv = cols.of(*f.root());
  for (std::size_t r = 0; r < m.num_rows(); ++r)
    if (rv[r] != Trit::One)
      throw PreconditionError("formula is not 1 on implicant " +
                              m.row(r).str());
  for (std::size_t c = 0; c < m.num_cols(); ++c)
    if (cv[c] != Trit::Zero)
      throw PreconditionError("formula is not 0 on implicate " +
                              m.col(c).str());
  return ProtocolTree(
      builder.walk(*f.root(), iota_vec(m.num_rows()), iota_vec(m.num_cols())),
      f.num_vars(), f.style());
}

ProtocolTree formula_to_protocol(const Formula& formula, const TruthTable& f) {
  return formula_to_protocol(formula, build_matrix(f));
}

// ---------------------------------------------------------------------------
// Protocol → formula

namespace {

NodePtr to_node(const ProtocolNode& n) {
  switch (n.turn) {
    case Turn::Leaf:
      return node::literal(static_cast<std::uint32_t>(n.coord),
                           n.polarity == LeafPolarity::Row0);
    case Turn::Alice:
      return node::disj(to_node(*n.left), to_node(*n.right));
    case Turn::Bob:
      return node::conj(to_node(*n.left), to_node(*n.right));
  }
  return nullptr;
}

// Empty when the leaf is monochromatic for its coordinate and polarity.
std::string leaf_defect(const ProtocolNode& leaf, const CommMatrix& m) {
  if (leaf.coord == 0 || leaf.coord > m.num_vars())
    return "leaf coordinate " + std::to_string(leaf.coord) + " out of range";
  if (leaf.rows.empty() || leaf.cols.empty()) return {};
  const Trit want_row =
      leaf.polarity == LeafPolarity::Row1 ? Trit::One : Trit::Zero;
  for (std::size_t r : leaf.rows)
    if (m.row(r)[leaf.coord - 1] != want_row)
      return "row " + m.row(r).str() + " does not fit leaf coordinate " +
             std::to_string(leaf.coord);
  for (std::size_t c : leaf.cols)
    if (m.col(c)[leaf.coord - 1] != trit_not(want_row))
      return "column " + m.col(c).str() + " does not fit leaf coordinate " +
             std::to_string(leaf.coord);
  return {};
}

}  // namespace

Formula protocol_to_formula(const ProtocolTree& p) {
  return Formula(to_node(*p.root()), p.num_vars(), p.style());
}

Formula protocol_to_formula(const ProtocolTree& p, const CommMatrix& m) {
  const PartitionCheck check = verify_partition(p, m);
  if (!check.ok) throw PreconditionError("invalid protocol: " + check.reason);
  return protocol_to_formula(p);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

bool is_sorted_unique(const std::vector<std::size_t>& v) {
  return std::adjacent_find(v.begin(), v.end(),
                            std::greater_equal<std::size_t>()) == v.end();
}

std::string check_node(const ProtocolNode& n, const CommMatrix& m,
                       std::size_t& leaves) {
  if (!is_sorted_unique(n.rows) || !is_sorted_unique(n.cols))
    return "node rectangle indices are not sorted and distinct";
  if (n.turn == Turn::Leaf) {
    ++leaves;
    return leaf_defect(n, m);
  }
  if (!n.left || !n.right) return "internal node without two children";
  const ProtocolNode& a = *n.left;
  const ProtocolNode& b = *n.right;
  if (n.turn == Turn::Alice) {
    if (a.cols != n.cols || b.cols != n.cols)
      return "Alice node children change the column set";
    if (merge_sorted(a.rows, b.rows) != n.rows ||
        !is_sorted_unique(merge_sorted(a.rows, b.rows)))
      return "Alice node children do not partition the rows";
  } else {
    if (a.rows != n.rows || b.rows != n.rows)
      return "Bob node children change the row set";
    if (merge_sorted(a.cols, b.cols) != n.cols ||
        !is_sorted_unique(merge_sorted(a.cols, b.cols)))
      return "Bob node children do not partition the columns";
  }
  if (auto e = check_node(a, m, leaves); !e.empty()) return e;
  return check_node(b, m, leaves);
}

void collect_leaves(const ProtocolNode& n, std::vector<Rectangle>& out) {
  if (n.turn == Turn::Leaf) {
    out.push_back({n.rows, n.cols, n.coord});
    return;
  }
  collect_leaves(*n.left, out);
  collect_leaves(*n.right, out);
}

}  // namespace

PartitionCheck verify_partition(const ProtocolTree& p, const CommMatrix& m) {
  PartitionCheck out;
  if (p.num_vars() != m.num_vars()) {
    out.reason = "protocol and matrix differ in arity";
    return out;
  }
  const ProtocolNode& root = *p.root();
  if (root.rows != iota_vec(m.num_rows()) ||
      root.cols != iota_vec(m.num_cols())) {
    out.reason = "root rectangle is not the whole matrix";
    return out;
  }
  out.reason = check_node(root, m, out.rectangles);
  if (!out.reason.empty()) return out;

  // Independent tiling count: every cell covered exactly once.
  std::vector<std::uint32_t> hits(m.num_rows() * m.num_cols(), 0);
  for (const Rectangle& rect : leaf_rectangles(p))
    for (std::size_t r : rect.rows)
      for (std::size_t c : rect.cols) ++hits[r * m.num_cols() + c];
  if (std::any_of(hits.begin(), hits.end(),
                  [](std::uint32_t h) { return h != 1; })) {
    out.reason = "leaf rectangles do not tile the matrix exactly once";
    return out;
  }
  out.ok = true;
  return out;
}

std::vector<Rectangle> leaf_rectangles(const ProtocolTree& p) {
  std::vector<Rectangle> out;
  collect_leaves(*p.root(), out);
  return out;
}

PartitionCheck verify_rectangle_partition(const CommMatrix& m,
                                          const std::vector<Rectangle>& rects) {
  PartitionCheck out;
  out.rectangles = rects.size();
  std::vector<std::uint32_t> hits(m.num_rows() * m.num_cols(), 0);
  for (std::size_t k = 0; k < rects.size(); ++k) {
    const Rectangle& rect = rects[k];
    const std::string label = "rectangle " + std::to_string(k + 1);
    for (std::size_t r : rect.rows)
      if (r >= m.num_rows()) {
        out.reason = label + " has a row out of range";
        return out;
      }
    for (std::size_t c : rect.cols)
      if (c >= m.num_cols()) {
        out.reason = label + " has a column out of range";
        return out;
      }
    std::optional<Trit> row_value;
    for (std::size_t r : rect.rows) {
      for (std::size_t c : rect.cols) {
        ++hits[r * m.num_cols() + c];
        if (!m.cell_contains(r, c, rect.coord)) {
          out.reason = label + ": coordinate " + std::to_string(rect.coord) +
                       " is not in cell (" + m.row(r).str() + ", " +
                       m.col(c).str() + ")";
          return out;
        }
      }
      const Trit v = m.row(r)[rect.coord - 1];
      if (row_value && *row_value != v) {
        out.reason = label + " mixes both polarities";
        return out;
      }
      row_value = v;
    }
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] != 1) {
      out.reason = "cell (" + m.row(i / m.num_cols()).str() + ", " +
                   m.col(i % m.num_cols()).str() + ") covered " +
                   std::to_string(hits[i]) + " times";
      return out;
    }
  }
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------
// Play

namespace {

bool above_some(const TernaryWord& w, const std::vector<TernaryWord>& words) {
  return std::any_of(words.begin(), words.end(), [&](const TernaryWord& p) {
    return stability_leq(p, w);
  });
}

std::size_t reduce_input(const TernaryWord& w,
                         const std::vector<TernaryWord>& words,
                         const std::function<std::optional<std::size_t>(
                             const TernaryWord&)>& lookup,
                         const char* what) {
  if (auto i = lookup(w)) return *i;
  if (!above_some(w, words))
    throw PreconditionError(w.str() + " is not an " + what +
                            " of the matrix's function");
  TernaryWord cur = w;
  for (std::size_t coord = 1; coord <= cur.size(); ++coord) {
    if (!is_stable(cur.at(coord))) continue;
    TernaryWord next = cur.with(coord, Trit::U);
    if (above_some(next, words)) cur = std::move(next);
  }
  if (auto i = lookup(cur)) return *i;
  throw PreconditionError("reduced input " + cur.str() + " is not in the matrix");
}

}  // namespace

PlayOutcome play(const ProtocolTree& p, const CommMatrix& m,
                 const TernaryWord& alpha, const TernaryWord& beta) {
  if (alpha.size() != m.num_vars() || beta.size() != m.num_vars())
    throw ArityError("game inputs do not match the matrix arity");
  PlayOutcome out;
  out.row = reduce_input(alpha, m.rows(),
                         [&](const TernaryWord& w) { return m.row_index(w); },
                         "implicant");
  out.col = reduce_input(beta, m.cols(),
                         [&](const TernaryWord& w) { return m.col_index(w); },
                         "implicate");
  const ProtocolNode* n = p.root().get();
  auto holds = [](const std::vector<std::size_t>& v, std::size_t i) {
    return std::binary_search(v.begin(), v.end(), i);
  };
  while (n->turn != Turn::Leaf) {
    if (n->turn == Turn::Alice) {
      n = holds(n->left->rows, out.row) ? n->left.get() : n->right.get();
    } else {
      n = holds(n->left->cols, out.col) ? n->left.get() : n->right.get();
    }
  }
  if (!holds(n->rows, out.row) || !holds(n->cols, out.col))
    throw PreconditionError("protocol does not cover the input pair");
  out.coordinate = n->coord;
  out.polarity = n->polarity;
  return out;
}

// ---------------------------------------------------------------------------
// Monotone games

MonotoneCorrespondence monotone_reduction(const TruthTable& f) {
  if (!f.is_monotone())
    throw PreconditionError("function is not monotone");
  const std::size_t n = f.num_vars();
  const ExtensionTable ext(f);
  MonotoneCorrespondence out;
  out.implicants = prime_implicants(ext);
  out.implicates = prime_implicates(ext);

  auto replace_u = [](const TernaryWord& w, bool fill) {
    std::vector<bool> bits(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      bits[i] = w[i] == Trit::U ? fill : w[i] == Trit::One;
    return BoolWord(std::move(bits));
  };
  for (const TernaryWord& w : out.implicants)
    out.minterms.push_back(replace_u(w, false));
  for (const TernaryWord& w : out.implicates)
    out.maxterms.push_back(replace_u(w, true));

  // Minimal 1-points and maximal 0-points by brute force.
  std::vector<std::uint64_t> minimal, maximal;
  for (std::uint64_t j = 0; j < f.rows(); ++j) {
    bool is_min = f(j), is_max = !f(j);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((j & bit) && f(j & ~bit)) is_min = false;
      if (!(j & bit) && !f(j | bit)) is_max = false;
    }
    if (is_min) minimal.push_back(j);
    if (is_max) maximal.push_back(j);
  }
  auto indices = [](const std::vector<BoolWord>& words) {
    std::vector<std::uint64_t> v;
    for (const BoolWord& w : words) v.push_back(w.index());
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto mins = indices(out.minterms);
  const auto maxs = indices(out.maxterms);
  out.bijective =
      std::adjacent_find(mins.begin(), mins.end()) == mins.end() &&
      std::adjacent_find(maxs.begin(), maxs.end()) == maxs.end() &&
      mins == minimal && maxs == maximal;

  const CommMatrix m(out.implicants.words, out.implicates.words);
  out.cells_coincide = true;
  for (std::size_t r = 0; r < m.num_rows() && out.cells_coincide; ++r) {
    for (std::size_t c = 0; c < m.num_cols(); ++c) {
      std::vector<std::size_t> mono;
      for (std::size_t i = 0; i < n; ++i)
        if (out.minterms[r][i] && !out.maxterms[c][i]) mono.push_back(i + 1);
      if (mono != m.cell(r, c)) {
        out.cells_coincide = false;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json words_json(const std::vector<TernaryWord>& all,
                const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (std::size_t i : idx) a.push_back(all[i].str());
  return a;
}

json node_json(const ProtocolNode& n, const CommMatrix& m) {
  json j;
  if (n.turn == Turn::Leaf) {
    j["leaf"] = {{"coord", n.coord},
                 {"polarity",
                  n.polarity == LeafPolarity::Row1 ? "row1" : "row0"}};
  } else {
    j["turn"] = n.turn == Turn::Alice ? "A" : "B";
    j["children"] = json::array({node_json(*n.left, m), node_json(*n.right, m)});
  }
  j["rows"] = words_json(m.rows(), n.rows);
  j["cols"] = words_json(m.cols(), n.cols);
  return j;
}

std::vector<std::size_t> indices_from_json(
    const json& words,
    const std::function<std::optional<std::size_t>(const TernaryWord&)>& lookup,
    const char* what) {
  std::vector<std::size_t> out;
  for (const json& w : words) {
    const TernaryWord word = TernaryWord::parse(w.get<std::string>());
    auto i = lookup(word);
    if (!i)
      throw ParseError(std::string(what) + " " + word.str() +
                           " is not in the matrix",
                       0);
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProtocolPtr node_from_json(const json& j, const CommMatrix& m) {
  auto rows_of = [&](const json& node) {
    return indices_from_json(
        node.at("rows"), [&](const TernaryWord& w) { return m.row_index(w); },
        "row");
  };
  auto cols_of = [&](const json& node) {
    return indices_from_json(
        node.at("cols"), [&](const TernaryWord& w) { return m.col_index(w); },
        "column");
  };
  if (j.contains("leaf")) {
    const json& leaf = j.at("leaf");
    const std::string pol = leaf.value("polarity", "row1");
    if (pol != "row1" && pol != "row0")
      throw ParseError("leaf polarity must be row1 or row0", 0);
    return make_leaf(rows_of(j), cols_of(j), leaf.at("coord").get<std::size_t>(),
                     pol == "row1" ? LeafPolarity::Row1 : LeafPolarity::Row0);
  }
  const std::string turn = j.at("turn").get<std::string>();
  if (turn != "A" && turn != "B")
    throw ParseError("turn must be \"A\" or \"B\"", 0);
  const json& ch = j.at("children");
  if (!ch.is_array() || ch.size() != 2)
    throw ParseError("protocol nodes have exactly two children", 0);
  auto node = std::make_shared<ProtocolNode>(*make_turn(
      turn == "A" ? Turn::Alice : Turn::Bob, node_from_json(ch[0], m),
      node_from_json(ch[1], m)));
  // Explicit rectangles win over the derived ones so that verification sees
  // exactly what the file states.
  if (j.contains("rows")) node->rows = rows_of(j);
  if (j.contains("cols")) node->cols = cols_of(j);
  return node;
}

}  // namespace

std::string matrix_to_json(const CommMatrix& m) {
  json j;
  j["rows"] = json::array();
  j["cols"] = json::array();
  for (const auto& r : m.rows()) j["rows"].push_back(r.str());
  for (const auto& c : m.cols()) j["cols"].push_back(c.str());
  json cells = json::array();
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    json line = json::array();
    for (std::size_t c = 0; c < m.num_cols(); ++c) line.push_back(m.cell(r, c));
    cells.push_back(std::move(line));
  }
  j["cells"] = std::move(cells);
  return j.dump();
}

CommMatrix matrix_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    std::vector<TernaryWord> rows, cols;
    for (const json& w : j.at("rows"))
      rows.push_back(TernaryWord::parse(w.get<std::string>()));
    for (const json& w : j.at("cols"))
      cols.push_back(TernaryWord::parse(w.get<std::string>()));
    CommMatrix m(std::move(rows), std::move(cols));
    if (j.contains("cells")) {
      const json& cells = j.at("cells");
      for (std::size_t r = 0; r < m.num_rows(); ++r)
        for (std::size_t c = 0; c < m.num_cols(); ++c)
          if (cells.at(r).at(c).get<std::vector<std::size_t>>() != m.cell(r, c))
            throw ParseError("cell (" + m.row(r).str() + ", " +
                                 m.col(c).str() + ") does not match its words",
                             0);
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string protocol_to_json(const ProtocolTree& p, const CommMatrix& m) {
  return node_json(*p.root(), m).dump();
}

ProtocolTree protocol_from_json(std::string_view text, const CommMatrix& m,
                                VarStyle style) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    return ProtocolTree(node_from_json(j, m), m.num_vars(), style);
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace hazkw

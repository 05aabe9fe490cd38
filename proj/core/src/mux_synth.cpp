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

#include "hazkw/mux_synth.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "hazkw/implicants.hpp"

namespace hazkw {

namespace {

constexpr std::size_t kMaxSelectors = 12;

void check_n(std::size_t n) {
  if (n == 0 || n > kMaxSelectors)
    throw std::invalid_argument("MUX selector count must be in [1, " +
                                std::to_string(kMaxSelectors) + "]");
}

std::size_t ceil_log2(std::uint64_t k) {
  std::size_t r = 0;
  while ((std::uint64_t{1} << r) < k) ++r;
  return r;
}

NodePtr selector(std::size_t k, bool negated = false) {
  return node::literal(static_cast<std::uint32_t>(k), negated);
}

NodePtr data(std::size_t n, std::uint64_t j) {
  return node::literal(mux_data_var(n, j));
}

// MUX_m over selectors k..k+m-1 and data block [off, off + 2^m).
NodePtr size_optimal(std::size_t n, std::size_t k, std::uint64_t off,
                     std::size_t m) {
  if (m == 0) return data(n, off);
  NodePtr f0 = size_optimal(n, k + 1, off, m - 1);
  NodePtr f1 = size_optimal(n, k + 1, off + (std::uint64_t{1} << (m - 1)), m - 1);
  return node::disj(node::conj(f0, node::disj(f1, selector(k, true))),
                    node::conj(f1, selector(k)));
}

NodePtr term(const TernaryWord& w) {
  std::vector<NodePtr> lits;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (is_stable(w[i]))
      lits.push_back(node::literal(static_cast<std::uint32_t>(i + 1),
                                   w[i] == Trit::Zero));
  return node::balanced(lits, NodeKind::And);
}

// ---------------------------------------------------------------------------
// Depth-optimal protocol

struct Leaf {
  std::size_t coord;
  LeafPolarity polarity;
};

using Index = std::vector<std::size_t>;

Index join(const Index& a, const Index& b) {
  Index out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

// A turn whose one side is empty sends no message.
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

ProtocolPtr leaf(const Index& rows, const Index& cols, Leaf l) {
  if (rows.empty() || cols.empty()) return nullptr;
  return make_leaf(rows, cols, l.coord, l.polarity);
}

class DepthOptimalBuilder {
 public:
  DepthOptimalBuilder(std::size_t n, const CommMatrix& m) : n_(n), m_(m) {}

  // Sub-instance on selectors k..k+m-1 and data block [off, off + 2^m).
  // `sentinel` rows are answered by `sentinel_leaf` against every column.
  ProtocolPtr build(std::size_t k, std::uint64_t off, std::size_t m,
                    const Index& real, const Index& sentinel,
                    std::optional<Leaf> sentinel_leaf, const Index& cols) {
    Index r0, ru, r1, c0, cu, c1;
    for (std::size_t r : real) split(m_.row(r)[k - 1], r, r0, ru, r1);
    for (std::size_t c : cols) split(m_.col(c)[k - 1], c, c0, cu, c1);
    const Leaf pos_s{k, LeafPolarity::Row1};
    const Leaf neg_s{k, LeafPolarity::Row0};
    const std::uint64_t half = std::uint64_t{1} << (m - 1);
    auto x = [&](std::uint64_t j) {
      return Leaf{mux_data_var(n_, j), LeafPolarity::Row1};
    };
    auto sent = [&](const Index& c) {
      return sentinel_leaf ? leaf(sentinel, c, *sentinel_leaf) : nullptr;
    };

    const Index r0u = join(r0, ru);
    const Index c0u = join(c0, cu);
    const Index cu1 = join(cu, c1);
    ProtocolPtr top, bottom;
    if (m == 1) {
      top = bob(leaf(r0u, c0u, x(off)),
                alice(leaf(r0, c1, neg_s), leaf(ru, c1, x(off + 1))));
      bottom = bob(alice(leaf(r1, c0, pos_s), sent(c0)),
                   alice(leaf(r1, cu1, x(off + 1)), sent(cu1)));
    } else {
      ProtocolPtr tl = r0u.empty() || c0u.empty()
                           ? nullptr
                           : build(k + 1, off, m - 1, r0u, {}, std::nullopt, c0u);
      ProtocolPtr tr = (ru.empty() && r0.empty()) || c1.empty()
                           ? nullptr
                           : build(k + 1, off + half, m - 1, ru, r0, neg_s, c1);
      top = bob(std::move(tl), std::move(tr));
      ProtocolPtr bl = alice(leaf(r1, c0, pos_s), sent(c0));
      ProtocolPtr br = (r1.empty() && sentinel.empty()) || cu1.empty()
                           ? nullptr
                           : build(k + 1, off + half, m - 1, r1, sentinel,
                                   sentinel_leaf, cu1);
      bottom = bob(std::move(bl), std::move(br));
    }
    return alice(std::move(top), std::move(bottom));
  }

 private:
  static void split(Trit t, std::size_t i, Index& zero, Index& u, Index& one) {
    (t == Trit::Zero ? zero : t == Trit::U ? u : one).push_back(i);
  }

  std::size_t n_;
  const CommMatrix& m_;
};

Index iota_index(std::size_t count) {
  Index v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = i;
  return v;
}

// ---------------------------------------------------------------------------
// Prefix-code-shaped DNF

struct CodedTerm {
  std::size_t length;
  std::uint64_t code;
  NodePtr term;
};

NodePtr code_tree(std::vector<const CodedTerm*> items, std::size_t depth) {
  if (items.size() == 1 && items.front()->length == depth)
    return items.front()->term;
  std::vector<const CodedTerm*> zero, one;
  for (const CodedTerm* t : items) {
    if (t->length <= depth)
      throw std::logic_error("prefix code is not prefix-free");
    const bool bit = (t->code >> (t->length - 1 - depth)) & 1;
    (bit ? one : zero).push_back(t);
  }
  // Unused code space: the single child takes the node's place.
  if (zero.empty()) return code_tree(std::move(one), depth + 1);
  if (one.empty()) return code_tree(std::move(zero), depth + 1);
  return node::disj(code_tree(std::move(zero), depth + 1),
                    code_tree(std::move(one), depth + 1));
}

}  // namespace

CommMatrix mux_matrix(std::size_t n) {
  check_n(n);
  return CommMatrix(mux_prime_implicants(n).words,
                    mux_prime_implicates(n).words);
}

Formula synth_size_optimal(std::size_t n) {
  check_n(n);
  return Formula(size_optimal(n, 1, 0, n), mux_arity(n), VarStyle::Mux);
}

MuxProtocol depth_optimal_protocol(std::size_t n) {
  CommMatrix m = mux_matrix(n);
  DepthOptimalBuilder builder(n, m);
  ProtocolPtr root = builder.build(1, 0, n, iota_index(m.num_rows()), {},
                                   std::nullopt, iota_index(m.num_cols()));
  ProtocolTree p(std::move(root), mux_arity(n), VarStyle::Mux);
  return MuxProtocol{std::move(m), std::move(p)};
}

Formula synth_depth_optimal(std::size_t n) {
  return protocol_to_formula(depth_optimal_protocol(n).protocol);
}

Formula synth_alt2_huffman(std::size_t n) {
  check_n(n);
  std::vector<NodePtr> terms;
  for (const TernaryWord& w : mux_prime_implicants(n)) terms.push_back(term(w));
  return Formula(node::balanced(terms, NodeKind::Or), mux_arity(n),
                 VarStyle::Mux);
}

std::size_t alt2_codeword_length(std::size_t n, std::size_t i) {
  if (i > n) throw std::out_of_range("unstable selector count exceeds n");
  return 2 * n + 2 - ceil_log2((std::uint64_t{1} << i) + n - i);
}

Formula synth_alt2_depth_optimal(std::size_t n) {
  check_n(n);
  if (n == 1) return synth_alt2_huffman(1);
  struct Item {
    std::size_t length;
    std::size_t unstable;
    TernaryWord word;
  };
  std::vector<Item> items;
  for (const TernaryWord& w : mux_prime_implicants(n)) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < n; ++k) i += w[k] == Trit::U;
    items.push_back({alt2_codeword_length(n, i), i, w});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) {
                     return std::tie(a.length, a.unstable) <
                            std::tie(b.length, b.unstable);
                   });

  // Canonical code: consecutive values, shifted left when the length grows.
  std::vector<CodedTerm> coded;
  std::uint64_t code = 0;
  std::size_t prev = items.front().length;
  for (const Item& it : items) {
    code <<= (it.length - prev);
    prev = it.length;
    if (code >> it.length)
      throw std::logic_error("codeword lengths violate Kraft's inequality");
    coded.push_back({it.length, code, term(it.word)});
    ++code;
  }
  std::vector<const CodedTerm*> ptrs;
  for (const CodedTerm& c : coded) ptrs.push_back(&c);
  return Formula(code_tree(std::move(ptrs), 0), mux_arity(n), VarStyle::Mux);
}

Formula synth_derivative_formula(std::size_t n, const BoolWord& s,
                                 const BoolWord& x) {
  check_n(n);
  const std::uint64_t cube = std::uint64_t{1} << n;
  if (s.size() != n || x.size() != cube)
    throw ArityError("derivative point must have n selector and 2^n data bits");
  const std::uint64_t sel = s.index();
  std::vector<NodePtr> same, differ;
  for (std::uint64_t b = 0; b < cube; ++b) {
    std::vector<NodePtr> t;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
      if ((b ^ sel) & bit) t.push_back(selector(i + 1));
    }
    if (x[b] == x[sel]) {
      std::vector<NodePtr> lits{data(n, b)};
      lits.insert(lits.end(), t.begin(), t.end());
      same.push_back(node::balanced(lits, NodeKind::And));
    } else {
      differ.push_back(node::balanced(t, NodeKind::And));
    }
  }
  same.insert(same.end(), differ.begin(), differ.end());
  return Formula(node::balanced(same, NodeKind::Or), mux_arity(n),
                 VarStyle::Mux);
}

Formula synth_universal(const TruthTable& f) {
  const std::size_t n = f.num_vars();
  if (n == 0) return Formula(node::constant(f(0)), 1);
  const Formula mux = synth_size_optimal(n);
  std::vector<std::optional<bool>> assignment(mux.num_vars());
  for (std::uint64_t j = 0; j < f.rows(); ++j)
    assignment[mux_data_var(n, j) - 1] = f(j);
  // Only selector leaves survive, and those are exactly variables 1..n.
  const Formula folded = substitute_constants(mux, assignment);
  return Formula(folded.root(), n, VarStyle::Indexed);
}

}  // namespace hazkw

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

// Hand-rolled generators and brute-force oracles shared by the unit tests.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/ternary.hpp"

namespace hazkw::testing {

inline constexpr std::uint64_t kSeed = 0x6861'7a6b'7721ULL;

#ifndef HAZKW_FIXTURE_DIR
#error "HAZKW_FIXTURE_DIR must point at tests/fixtures"
#endif

inline std::string fixture(const std::string& name) {
  return std::string(HAZKW_FIXTURE_DIR) + "/" + name;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + below(hi - lo + 1);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Trit trit() { return static_cast<Trit>(below(3)); }

  TernaryWord ternary(std::size_t n) {
    std::vector<Trit> t(n);
    for (auto& x : t) x = trit();
    return TernaryWord(std::move(t));
  }

  BoolWord boolean(std::size_t n) {
    std::vector<bool> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = coin();
    return BoolWord(std::move(b));
  }

  /// A word at least as stable as `alpha`: some u's replaced by 0/1.
  TernaryWord refine(const TernaryWord& alpha) {
    std::vector<Trit> t(alpha.trits().begin(), alpha.trits().end());
    for (auto& x : t)
      if (x == Trit::U && coin()) x = trit_of(coin());
    return TernaryWord(std::move(t));
  }

  TruthTable table(std::size_t n) {
    std::vector<bool> v(std::size_t{1} << n);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coin();
    return TruthTable(n, std::move(v));
  }

  /// Upward closure of a few random points.
  TruthTable monotone_table(std::size_t n) {
    const std::size_t seeds = below(4);
    std::vector<std::uint64_t> points;
    for (std::size_t i = 0; i < seeds; ++i) points.push_back(below(std::size_t{1} << n));
    return TruthTable::from_function(n, [&](std::uint64_t a) {
      for (std::uint64_t p : points)
        if ((a & p) == p) return true;
      return false;
    });
  }

  /// Random formula tree with exactly `leaves` leaves over variables 1..vars.
  NodePtr node(std::size_t leaves, std::size_t vars, bool with_not = false) {
    if (leaves == 1) {
      return node::literal(static_cast<std::uint32_t>(between(1, vars)), coin());
    }
    const std::size_t left = between(1, leaves - 1);
    NodePtr a = node(left, vars, with_not);
    NodePtr b = node(leaves - left, vars, with_not);
    NodePtr g = coin() ? node::conj(a, b) : node::disj(a, b);
    if (with_not && coin(0.2)) g = node::negation(g);
    return g;
  }

  Formula formula(std::size_t leaves, std::size_t vars, bool with_not = false) {
    return Formula(node(leaves, vars, with_not), vars);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Oracles

/// Kleene evaluation straight from the tree.
inline Trit naive_eval(const NodePtr& n, std::span<const Trit> in) {
  switch (n->kind) {
    case NodeKind::Leaf: {
      const Trit v = in[n->var - 1];
      return n->negated ? trit_not(v) : v;
    }
    case NodeKind::Const:
      return trit_of(n->value);
    case NodeKind::Not:
      return trit_not(naive_eval(n->left, in));
    case NodeKind::And:
      return trit_and(naive_eval(n->left, in), naive_eval(n->right, in));
    case NodeKind::Or:
      return trit_or(naive_eval(n->left, in), naive_eval(n->right, in));
  }
  return Trit::U;
}

/// Hazard-free extension by enumerating the resolution subcube.
inline Trit brute_hfe(const TruthTable& f, const TernaryWord& alpha) {
  bool seen0 = false, seen1 = false;
  for (const BoolWord& a : resolutions(alpha)) (f(a) ? seen1 : seen0) = true;
  if (seen0 && seen1) return Trit::U;
  return trit_of(seen1);
}

inline std::vector<TernaryWord> all_ternary(std::size_t n) {
  std::vector<TernaryWord> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Trit> t(n);
    std::uint64_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      t[i] = static_cast<Trit>(c % 3);
      c /= 3;
    }
    out.emplace_back(std::move(t));
  }
  return out;
}

inline std::set<std::string> resolution_set(const TernaryWord& alpha) {
  std::set<std::string> out;
  for (const BoolWord& a : resolutions(alpha)) out.insert(a.str());
  return out;
}

/// Unstable-or-equal in the stability order: u is below 0 and 1.
inline bool trit_leq(Trit a, Trit b) { return a == Trit::U || a == b; }

}  // namespace hazkw::testing

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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hazkw/bounds.hpp"
#include "hazkw/errors.hpp"
#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/kw_game.hpp"
#include "hazkw/mux_synth.hpp"
#include "hazkw/transforms.hpp"
#include "support.hpp"

namespace hazkw {
namespace {

using testing::Gen;

double depth_limit(std::uint64_t m) {
  return 3.0 * std::log(static_cast<double>(m)) / std::log(1.5) + 3.0;
}

void expect_ternary_equal(const Formula& a, const Formula& b) {
  const CompiledFormula ca(a), cb(b);
  for (const TernaryWord& w : testing::all_ternary(a.num_vars()))
    ASSERT_EQ(ca.eval(w.trits()), cb.eval(w.trits())) << w << " in " << print(a);
}

TEST(DepthReduce, RandomCorpusKeepsSemanticsAndMeetsDepthBound) {
  Gen g;
  for (int i = 0; i < 120; ++i) {
    const std::size_t vars = g.between(1, 6);
    const Formula f = normalize(g.formula(g.between(1, 200), vars));
    const Formula r = depth_reduce(f);
    EXPECT_LE(depth(r), depth_limit(size(f))) << size(f);
    EXPECT_FALSE(contains_not(r));
    expect_ternary_equal(f, r);
  }
}

TEST(DepthReduce, Chains) {
  for (std::size_t m : {4u, 16u, 64u, 200u}) {
    NodePtr n = node::literal(1);
    for (std::uint32_t v = 2; v <= m; ++v)
      n = (v % 3 == 0) ? node::conj(node::literal((v % 7) + 1), n)
                       : node::disj(n, node::literal((v % 7) + 1, v % 2 == 0));
    const Formula f(n, 8);
    const Formula r = depth_reduce(f);
    EXPECT_EQ(depth(f), m - 1);
    EXPECT_LE(depth(r), depth_limit(m)) << m;
    expect_ternary_equal(f, r);
  }
}

TEST(DepthReduce, PreservesHazardFreeness) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const Formula f = synth_size_optimal(n);
    const Formula r = depth_reduce(f);
    EXPECT_TRUE(find_hazards(r, TruthTable::mux(n)).empty());
    EXPECT_EQ(r.style(), VarStyle::Mux);
  }
  const Formula r3 = depth_reduce(synth_size_optimal(3));
  EXPECT_TRUE(certify_hazard_free(r3, mux_prime_implicants(3).words,
                                  mux_prime_implicates(3).words));
}

TEST(DepthReduce, SmallInputsUnchanged) {
  const Formula f = parse_formula("(and v1 (or v2 v3))");
  EXPECT_TRUE(structurally_equal(depth_reduce(f).root(), f.root()));
  const Formula c = parse_formula("1");
  EXPECT_EQ(print(depth_reduce(c)), "1");
}

// Cells of the limited MUX_2 game (s1 = 1, s2 = 2, x00 = 3, x01 = 4,
// x10 = 5, x11 = 6), transcribed from the worked example.
TEST(LimitedMatrix, Mux2ExampleCells) {
  using V = std::vector<std::size_t>;
  const std::vector<std::vector<V>> expected = {
      {{3}, {3}, {2}, {3}, {2}, {1}, {1}, {1, 2}},
      {{3}, {3, 4}, {4}, {3}, {4}, {1}, {1}, {1}},
      {{2}, {4}, {4}, {2}, {4}, {1, 2}, {1}, {1}},
      {{3}, {3}, {2}, {3, 5}, {2}, {5}, {5}, {2}},
      {{2}, {4}, {4}, {2}, {4, 6}, {2}, {6}, {6}},
      {{1}, {1}, {1, 2}, {5}, {2}, {5}, {5}, {2}},
      {{1}, {1}, {1}, {5}, {6}, {5}, {5, 6}, {6}},
      {{1, 2}, {1}, {1}, {2}, {6}, {2}, {6}, {6}},
  };
  const CommMatrix m =
      limited_matrix(TruthTable::mux(2), limited_example_rows(), limited_example_cols());
  ASSERT_EQ(m.num_rows(), 8u);
  ASSERT_EQ(m.num_cols(), 8u);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      EXPECT_EQ(m.cell(r, c), expected[r][c]) << m.row(r) << " " << m.col(c);
}

TEST(LimitedMatrix, RejectsBadInputs) {
  const TruthTable t = TruthTable::mux(1);
  // 111 is an implicant but u00 alone does not cover the 0-inputs.
  EXPECT_THROW(limited_matrix(t, {TernaryWord::parse("u11"), TernaryWord::parse("01u"),
                                  TernaryWord::parse("1u1")},
                              {TernaryWord::parse("u00")}),
               PreconditionError);
  EXPECT_THROW(limited_matrix(t, {TernaryWord::parse("000")}, {TernaryWord::parse("u00")}),
               PreconditionError);
  EXPECT_THROW(limited_matrix(t, {TernaryWord::parse("01")}, {}), ArityError);
}

TEST(Kbit, BoundsValues) {
  const KbitBounds b = kbit_bounds(3, 1, 4, 2);
  EXPECT_EQ(b.subsets, 4u);
  EXPECT_EQ(b.max_size, 4u * 4u * 4u * 4u);
  EXPECT_EQ(b.max_depth, 2u * 2u + 2u + 2u);
  const KbitBounds c = kbit_bounds(4, 2, 7, 3);
  EXPECT_EQ(c.subsets, 11u);
  EXPECT_EQ(c.max_size, 11u * 11u * 16u * 7u);
  EXPECT_EQ(c.max_depth, 2u * 4u + 4u + 3u);
  EXPECT_EQ(kbit_bounds(3, 0, 5, 2).subsets, 1u);
}

TEST(Kbit, RandomFunctions) {
  Gen g;
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = g.between(1, 4);
    const std::size_t k = g.between(0, std::min<std::size_t>(n, 2));
    const Formula base = g.formula(g.between(1, 12), n, true);
    const TruthTable t = TruthTable::of_formula(base);
    const Formula out = kbit_hazard_free(t, k, base);
    const KbitBounds b = kbit_bounds(n, k, size(base), depth(base));
    EXPECT_EQ(TruthTable::of_formula(out), t) << print(base);
    EXPECT_TRUE(find_hazards(out, t, k).empty()) << print(base) << " k=" << k;
    EXPECT_LE(size(out), b.max_size);
    EXPECT_LE(depth(out), b.max_depth);
  }
}

TEST(Kbit, ConstructionIsAPartition) {
  const Formula plain = parse_formula("(or (and (not s) x0) (and s x1))");
  const KbitConstruction c = kbit_construction(TruthTable::mux(1), 1, plain);
  const PartitionCheck check = verify_partition(c.protocol, c.matrix);
  EXPECT_TRUE(check.ok) << check.reason;
  EXPECT_EQ(size(c.formula), 29u);
  EXPECT_EQ(depth(c.formula), 6u);
  EXPECT_TRUE(find_hazards(c.formula, TruthTable::mux(1), 1).empty());
  // Full hazard-freeness for MUX_1 needs at most one u.
  EXPECT_TRUE(find_hazards(c.formula, TruthTable::mux(1)).empty());
}

TEST(Kbit, KZeroIsTheBooleanGame) {
  const Formula f = parse_formula("(or (and v1 v2) (not v3))");
  const TruthTable t = TruthTable::of_formula(f);
  const Formula out = kbit_hazard_free(t, 0, f);
  EXPECT_EQ(TruthTable::of_formula(out), t);
}

TEST(Kbit, ConstantAndMismatch) {
  const Formula taut = parse_formula("(or v1 (not v1))");
  const Formula out = kbit_hazard_free(TruthTable::constant(1, true), 1, taut);
  EXPECT_EQ(print(out), "1");
  EXPECT_THROW(kbit_construction(TruthTable::constant(1, true), 1, taut), PreconditionError);
  EXPECT_THROW(kbit_hazard_free(TruthTable::parity(2), 1, parse_formula("(and v1 v2)")),
               FunctionalError);
  EXPECT_THROW(kbit_hazard_free(TruthTable::parity(2), 3, parse_formula("(and v1 v2)")),
               std::invalid_argument);
}

}  // namespace
}  // namespace hazkw

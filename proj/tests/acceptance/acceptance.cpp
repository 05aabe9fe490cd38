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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Time limits are wall-clock seconds on a single core.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/support.hpp"
#include "hazkw/bounds.hpp"
#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/implicants.hpp"
#include "hazkw/kw_game.hpp"
#include "hazkw/mux_synth.hpp"
#include "hazkw/transforms.hpp"

namespace hazkw::acceptance {
namespace {

constexpr double kBoundsSeconds = 60.0;
constexpr double kHazardSeconds = 30.0;
constexpr double kKraftSeconds = 1.0;
constexpr double kMonotoneSeconds = 30.0;
constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kCorpusMaxLeaves = 200;
constexpr std::size_t kCorpusMaxVars = 8;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::uint64_t pow3(std::size_t n) {
  std::uint64_t p = 1;
  while (n--) p *= 3;
  return p;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

bool certified(const Formula& f, std::size_t n) {
  const ImplicantSet ones = mux_prime_implicants(n);
  const ImplicantSet zeros = mux_prime_implicates(n);
  return certify_hazard_free(f, ones.words, zeros.words);
}

// ---------------------------------------------------------------------------

Outcome matching_bounds() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t want = 2 * pow3(n) - 1;
    const std::uint64_t upper = size(synth_size_optimal(n));
    const std::size_t rank = exact_rank(subcube_intersect_kronecker(n));
    o.require(upper == want, "n=" + str(n) + " size " + str(upper));
    o.require(rank == pow3(n), "n=" + str(n) + " rank " + str(rank));
    o.require(monorect_lower_bound(n) == want, "n=" + str(n) + " lower bound");
  }
  o.detail = o.ok ? "size = lower bound = 2*3^n-1 for n=1..6, rank exact" : o.detail;
  return o;
}

Outcome hazard_freeness() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const Formula& f : {synth_size_optimal(n), synth_depth_optimal(n)}) {
      const bool free = n <= 3 ? find_hazards(f, TruthTable::mux(n)).empty()
                               : certified(f, n);
      o.require(free, "hazard in n=" + str(n) + " formula of size " + str(size(f)));
    }
  }
  if (o.ok) o.detail = "exhaustive n=1..3, certified n=4..6, zero hazards";
  return o;
}

Outcome depth_optimal() {
  Outcome o;
  std::uint64_t s = 5, t = 7;
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::uint64_t s2 = 2 * s + t + 1, t2 = s + 2 * t + 2;
    s = s2;
    t = t2;
    const Formula f = synth_depth_optimal(n);
    o.require(depth(f) == 2 * n + 1, "n=" + str(n) + " depth " + str(depth(f)));
    // size = 2.25·3^n − n/2 − 1.25 exactly.
    o.require(4 * size(f) == 9 * pow3(n) - 2 * n - 5, "n=" + str(n) + " closed form");
    o.require(size(f) == s, "n=" + str(n) + " recurrence gives " + str(s));
  }
  if (o.ok) o.detail = "depth 2n+1, size 2.25*3^n-n/2-1.25 = S(n) for n=2..6";
  return o;
}

using Literal = std::pair<std::uint32_t, bool>;

void and_terms(const NodePtr& n, std::set<std::set<Literal>>& out) {
  if (n->kind == NodeKind::And) {
    std::set<Literal> term;
    std::function<void(const NodePtr&)> collect = [&](const NodePtr& m) {
      if (m->kind == NodeKind::And) {
        collect(m->left);
        collect(m->right);
      } else if (m->kind == NodeKind::Leaf) {
        term.insert({m->var, m->negated});
      }
    };
    collect(n);
    out.insert(term);
  }
  if (n->left) and_terms(n->left, out);
  if (n->right) and_terms(n->right, out);
}

Outcome alternation_two() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    const Formula f = synth_alt2_depth_optimal(n);
    o.require(alternation_depth(f) <= 2, "n=" + str(n) + " alternation depth");
    o.require(depth(f) == 2 * n + 2, "n=" + str(n) + " depth " + str(depth(f)));
    o.require(certified(f, n), "n=" + str(n) + " not hazard-free");
    std::set<std::set<Literal>> terms;
    and_terms(f.root(), terms);
    for (const TernaryWord& w : mux_prime_implicants(n)) {
      std::set<Literal> lits;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != Trit::U) lits.insert({static_cast<std::uint32_t>(i + 1), w[i] == Trit::Zero});
      o.require(terms.count(lits) == 1, "n=" + str(n) + " prime " + w.str() + " missing");
    }
    const std::uint64_t huff = size(synth_alt2_huffman(n));
    o.require(huff == (std::uint64_t{1} << (2 * n)) + 2 * n * pow3(n - 1),
              "n=" + str(n) + " huffman size " + str(huff));
  }
  if (o.ok) o.detail = "alt <= 2, depth 2n+2, certified, all primes as AND terms, huffman 4^n+2n*3^(n-1)";
  return o;
}

Outcome kraft() {
  Outcome o;
  for (std::size_t n = 2; n <= 38; ++n) {
    o.require(kraft_feasible(n, 2 * n + 2), "n=" + str(n) + " 2n+2 infeasible");
    o.require(!kraft_feasible(n, 2 * n + 1), "n=" + str(n) + " 2n+1 feasible");
    o.require(kraft_float_ok(n), "n=" + str(n) + " float replica reports a problem");
  }
  if (o.ok) o.detail = "exact: 2n+2 feasible, 2n+1 infeasible; float replica ok, n=2..38";
  return o;
}

Outcome kw_round_trip() {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const CommMatrix m = mux_matrix(n);
    for (const Formula& f : {synth_size_optimal(n), synth_depth_optimal(n),
                             synth_alt2_depth_optimal(n), synth_alt2_huffman(n)}) {
      const std::string tag = "n=" + str(n) + " size " + str(size(f));
      const ProtocolTree p = formula_to_protocol(f, m);
      const PartitionCheck check = verify_partition(p, m);
      o.require(check.ok, tag + ": " + check.reason);
      o.require(check.rectangles == size(f), tag + " rectangle count");
      o.require(p.depth() == depth(f), tag + " protocol depth");
      const Formula back = protocol_to_formula(p, m);
      o.require(size(back) == size(f) && depth(back) == depth(f), tag + " inverse");
      o.require(structurally_equal(back.root(), normalize(f).root()), tag + " inverse differs");
      ++checked;
    }
  }
  if (o.ok) o.detail = str(checked) + " formulas: partition count = size, depth = depth, inverse exact";
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome five_rect_fixture() {
  Outcome o;
  const CommMatrix m = build_matrix(TruthTable::mux(1));
  const ProtocolTree p = protocol_from_json(
      read_file(testing::fixture("mux1_five_rect_protocol.json")), m, VarStyle::Mux);
  const PartitionCheck check = verify_partition(p, m);
  o.require(check.ok, check.reason);
  o.require(check.rectangles == 5, "rectangles " + str(check.rectangles));
  std::size_t pairs = 0;
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t c = 0; c < m.num_cols(); ++c) {
      const PlayOutcome out = play(p, m, m.row(r), m.col(c));
      o.require(m.cell_contains(r, c, out.coordinate),
                "wrong answer on " + m.row(r).str() + "/" + m.col(c).str());
      ++pairs;
    }
  }
  o.require(pairs == 9, "expected 9 prime pairs");
  if (o.ok) o.detail = "5 monochromatic rectangles, 9/9 prime pairs answered";
  return o;
}

Outcome limited_example() {
  Outcome o;
  using V = std::vector<std::size_t>;
  // s1 = 1, s2 = 2, x00 = 3, x01 = 4, x10 = 5, x11 = 6.
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
  o.require(m.num_rows() == 8 && m.num_cols() == 8, "matrix is not 8x8");
  for (std::size_t r = 0; r < 8 && o.ok; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      o.require(m.cell(r, c) == expected[r][c], "cell " + m.row(r).str() + "/" + m.col(c).str());
  const PartitionCheck check = verify_rectangle_partition(m, limited_example_partition());
  o.require(check.ok && check.rectangles == 16, "coloring: " + check.reason);
  o.require(limited_substitution(m, 2) == limited_fixture_matrix(), "block matrix differs");
  o.require(limited_rank_certificate() == 16, "rank " + str(limited_rank_certificate()));
  if (o.ok) o.detail = "8x8 cells match, 16-rectangle coloring verifies, block rank 16";
  return o;
}

Outcome monotone_coincidence() {
  Outcome o;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::uint64_t tables = std::uint64_t{1} << (1u << n);
    for (std::uint64_t bits = 0; bits < tables; ++bits) {
      const TruthTable t =
          TruthTable::from_function(n, [&](std::uint64_t a) { return (bits >> a) & 1; });
      if (t.is_constant() || !t.is_monotone()) continue;
      const MonotoneCorrespondence c = monotone_reduction(t);
      o.require(c.bijective, t.to_hex() + " not bijective");
      o.require(c.cells_coincide, t.to_hex() + " cells differ");
      ++count;
    }
  }
  // Dedekind numbers minus the two constants: 1, 4, 18, 166.
  o.require(count == 1 + 4 + 18 + 166, "enumerated " + str(count) + " functions");
  if (o.ok) o.detail = str(count) + " non-constant monotone functions on <= 4 variables";
  return o;
}

Outcome derivatives() {
  Outcome o;
  std::size_t points = 0;
  for (std::size_t n = 1; n <= 2; ++n) {
    const TruthTable t = TruthTable::mux(n);
    const std::size_t arity = mux_arity(n);
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << arity) && o.ok; ++p) {
      const BoolWord point = BoolWord::from_index(arity, p);
      std::vector<bool> s, x;
      for (std::size_t i = 0; i < arity; ++i) (i < n ? s : x).push_back(point[i]);
      const Formula d = synth_derivative_formula(n, BoolWord(s), BoolWord(x));
      o.require(is_monotone(d), point.str() + " not monotone");
      o.require(size(d) <= ((n + 1) << n), point.str() + " size " + str(size(d)));
      for (std::uint64_t q = 0; q < (std::uint64_t{1} << arity); ++q) {
        const BoolWord y = BoolWord::from_index(arity, q);
        o.require(eval(d, y) == hazard_derivative(t, point, y),
                  point.str() + " differs at " + y.str());
      }
      ++points;
    }
  }
  if (o.ok) o.detail = str(points) + " points: monotone, size <= (n+1)2^n, brute-force equal";
  return o;
}

Outcome transforms() {
  Outcome o;
  testing::Gen g(testing::kSeed);
  double worst = 0;
  for (std::size_t i = 0; i < kCorpusSize && o.ok; ++i) {
    const std::size_t vars = g.between(1, kCorpusMaxVars);
    const Formula f = normalize(g.formula(g.between(1, kCorpusMaxLeaves), vars));
    const Formula r = depth_reduce(f);
    const double limit = 3.0 * std::log(double(size(f))) / std::log(1.5) + 3.0;
    o.require(depth(r) <= limit, "depth " + str(depth(r)) + " for size " + str(size(f)));
    worst = std::max(worst, depth(r) - limit);
    const CompiledFormula cf(f), cr(r);
    for (const TernaryWord& w : testing::all_ternary(vars)) {
      if (cf.eval(w.trits()) != cr.eval(w.trits())) {
        o.require(false, "evaluation differs at " + w.str());
        break;
      }
    }
  }
  std::size_t kbits = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 0; k <= std::min<std::size_t>(n, 2); ++k) {
      for (int rep = 0; rep < 5; ++rep) {
        const Formula base = g.formula(g.between(2, 12), n, true);
        const TruthTable t = TruthTable::of_formula(base);
        const Formula out = kbit_hazard_free(t, k, base);
        const KbitBounds b = kbit_bounds(n, k, size(base), depth(base));
        const std::string tag = "kbit n=" + str(n) + " k=" + str(k);
        o.require(TruthTable::of_formula(out) == t, tag + " wrong function");
        o.require(find_hazards(out, t, k).empty(), tag + " has a k-bit hazard");
        o.require(size(out) <= b.max_size, tag + " size bound");
        o.require(depth(out) <= b.max_depth, tag + " depth bound");
        ++kbits;
      }
    }
  }
  if (o.ok)
    o.detail = str(kCorpusSize) + " balanced formulas exact and within depth bound; " +
               str(kbits) + " k-bit outputs within bounds";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
  double limit;  // seconds; 0 for none
};

}  // namespace
}  // namespace hazkw::acceptance

int main() {
  using namespace hazkw::acceptance;
  const Criterion criteria[] = {
      {1, "matching bounds", matching_bounds, kBoundsSeconds},
      {2, "hazard-freeness", hazard_freeness, kHazardSeconds},
      {3, "depth-optimal construction", depth_optimal, 0},
      {4, "alternation depth 2", alternation_two, 0},
      {5, "kraft replication", kraft, kKraftSeconds},
      {6, "KW round trip", kw_round_trip, 0},
      {7, "MUX1 five-rectangle protocol", five_rect_fixture, 0},
      {8, "limited-hazard example", limited_example, 0},
      {9, "monotone coincidence", monotone_coincidence, kMonotoneSeconds},
      {10, "derivatives", derivatives, 0},
      {11, "transforms", transforms, 0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit > 0 && secs > c.limit) {
      o.ok = false;
      o.detail = "over time limit of " + std::to_string(c.limit) + " s";
    }
    failures += !o.ok;
    std::printf("%s %2d %-28s %7.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}

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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/implicants.hpp"
#include "hazkw/ternary.hpp"

namespace hazkw {

/// Hazard-free KW communication matrix. Rows are Alice's inputs
/// (implicants), columns Bob's (implicates); a cell holds the coordinates
/// where both words are stable and differ. Cells are computed on demand.
class CommMatrix {
 public:
  CommMatrix(std::vector<TernaryWord> rows, std::vector<TernaryWord> cols);

  std::size_t num_rows() const noexcept { return rows_.size(); }
  std::size_t num_cols() const noexcept { return cols_.size(); }
  std::size_t num_vars() const noexcept { return n_; }
  const std::vector<TernaryWord>& rows() const noexcept { return rows_; }
  const std::vector<TernaryWord>& cols() const noexcept { return cols_; }
  const TernaryWord& row(std::size_t r) const { return rows_.at(r); }
  const TernaryWord& col(std::size_t c) const { return cols_.at(c); }

  /// 1-based coordinates, increasing.
  std::vector<std::size_t> cell(std::size_t r, std::size_t c) const;
  bool cell_contains(std::size_t r, std::size_t c, std::size_t coord) const;

  std::optional<std::size_t> row_index(const TernaryWord& w) const;
  std::optional<std::size_t> col_index(const TernaryWord& w) const;

  /// First empty cell, if any (impossible for matrices built from a
  /// function's implicants and implicates).
  std::optional<std::pair<std::size_t, std::size_t>> find_empty_cell() const;

 private:
  std::size_t n_ = 0;
  std::vector<TernaryWord> rows_;
  std::vector<TernaryWord> cols_;
  std::map<std::string, std::size_t> row_lookup_;
  std::map<std::string, std::size_t> col_lookup_;
};

/// Prime implicants × prime implicates of `f`. Throws PreconditionError on
/// an empty cell.
CommMatrix build_matrix(const TruthTable& f);

enum class Turn : std::uint8_t { Alice, Bob, Leaf };

/// Which side holds the 1 at the leaf's coordinate. `Row1` leaves become the
/// literal x_i, `Row0` leaves become ¬x_i.
enum class LeafPolarity : std::uint8_t { Row1, Row0 };

struct ProtocolNode;
using ProtocolPtr = std::shared_ptr<const ProtocolNode>;

/// Protocol node with the rectangle it serves, as sorted row and column
/// indices into a CommMatrix.
struct ProtocolNode {
  Turn turn = Turn::Leaf;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  ProtocolPtr left;   // Alice/Bob
  ProtocolPtr right;  // Alice/Bob
  std::size_t coord = 0;  // Leaf, 1-based
  LeafPolarity polarity = LeafPolarity::Row1;
};

ProtocolPtr make_leaf(std::vector<std::size_t> rows,
                      std::vector<std::size_t> cols, std::size_t coord,
                      LeafPolarity polarity);
ProtocolPtr make_turn(Turn turn, ProtocolPtr left, ProtocolPtr right);

class ProtocolTree {
 public:
  ProtocolTree(ProtocolPtr root, std::size_t num_vars,
               VarStyle style = VarStyle::Indexed);

  const ProtocolPtr& root() const noexcept { return root_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  VarStyle style() const noexcept { return style_; }
  std::size_t leaves() const;
  std::size_t depth() const;

 private:
  ProtocolPtr root_;
  std::size_t num_vars_;
  VarStyle style_;
};

/// OR gates become Alice's turns, AND gates Bob's; at an OR the rows on
/// which the right child is 1 go right, the rest left (dually for AND).
/// Throws PreconditionError when the walk gets stuck, i.e. when the formula
/// is not hazard-free for the matrix.
ProtocolTree formula_to_protocol(const Formula& formula, const CommMatrix& m);
ProtocolTree formula_to_protocol(const Formula& formula, const TruthTable& f);

Formula protocol_to_formula(const ProtocolTree& p);
/// As above, after checking that every leaf rectangle is monochromatic.
Formula protocol_to_formula(const ProtocolTree& p, const CommMatrix& m);

struct PartitionCheck {
  bool ok = false;
  std::size_t rectangles = 0;
  std::string reason;  // empty when ok
};

/// The leaves tile the whole matrix and each is monochromatic with its
/// stated coordinate and polarity.
PartitionCheck verify_partition(const ProtocolTree& p, const CommMatrix& m);

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::size_t coord = 0;  // 1-based
};

/// Disjoint cover of `m` by rectangles, each monochromatic: `coord` lies in
/// every cell and every row carries the same value there.
PartitionCheck verify_rectangle_partition(const CommMatrix& m,
                                          const std::vector<Rectangle>& rects);

std::vector<Rectangle> leaf_rectangles(const ProtocolTree& p);

struct PlayOutcome {
  std::size_t coordinate = 0;
  LeafPolarity polarity = LeafPolarity::Row1;
  std::size_t row = 0;  // reduced inputs, as matrix indices
  std::size_t col = 0;
};

/// Runs the game. Inputs that are not rows/columns are first reduced to one:
/// scanning left to right, each stable bit is flipped to u while the word
/// stays above some row (column). Throws PreconditionError if an input is
/// not above any row (column).
PlayOutcome play(const ProtocolTree& p, const CommMatrix& m,
                 const TernaryWord& alpha, const TernaryWord& beta);

/// Relabeling between the hazard-free game of a monotone function and its
/// monotone KW game: implicant → minterm (u→0), implicate → maxterm (u→1).
struct MonotoneCorrespondence {
  ImplicantSet implicants;
  ImplicantSet implicates;
  std::vector<BoolWord> minterms;  // minterms[i] ↔ implicants[i]
  std::vector<BoolWord> maxterms;  // maxterms[j] ↔ implicates[j]
  bool bijective = false;       // onto the minimal 1-points / maximal 0-points
  bool cells_coincide = false;  // cell(i,j) = {k : a_k = 1, b_k = 0}
};

/// Throws PreconditionError if `f` is not monotone.
MonotoneCorrespondence monotone_reduction(const TruthTable& f);

std::string matrix_to_json(const CommMatrix& m);
CommMatrix matrix_from_json(std::string_view text);
/// Nested {turn:"A"|"B", children:[...]} / {leaf:{coord, polarity}} with the
/// rectangle of every node as "rows"/"cols" word lists.
std::string protocol_to_json(const ProtocolTree& p, const CommMatrix& m);
ProtocolTree protocol_from_json(std::string_view text, const CommMatrix& m,
                                VarStyle style = VarStyle::Indexed);

}  // namespace hazkw

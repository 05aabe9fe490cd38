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
#include <string>
#include <string_view>
#include <vector>

#include "hazkw/kw_game.hpp"

namespace hazkw {

/// Dense matrix with entries in {0, 1}.
class ZeroOneMatrix {
 public:
  ZeroOneMatrix() = default;
  ZeroOneMatrix(std::size_t rows, std::size_t cols);
  static ZeroOneMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  void set(std::size_t r, std::size_t c, int v);

  ZeroOneMatrix transpose() const;
  ZeroOneMatrix block(std::size_t r0, std::size_t c0, std::size_t h,
                      std::size_t w) const;

  friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

ZeroOneMatrix kronecker(const ZeroOneMatrix& a, const ZeroOneMatrix& b);

/// Largest n accepted by the subcube matrix builders (3^8 = 6561 rows).
inline constexpr std::size_t kMaxSubcubeN = 8;

/// Rows and columns are the words of {0,u,1}^n in base-3 order with digits
/// 0 < u < 1 (first position most significant); entry 1 iff the subcubes
/// intersect. Built from the word pairs.
ZeroOneMatrix subcube_intersect_matrix(std::size_t n);
/// The same matrix as the n-fold Kronecker power of the 3×3 base.
ZeroOneMatrix subcube_intersect_kronecker(std::size_t n);

/// Rank over the rationals by fraction-free (Bareiss) elimination. Runs on
/// machine integers while no intermediate overflows and restarts on big
/// integers otherwise.
std::size_t exact_rank(const ZeroOneMatrix& m);

/// 2·rank(subcube matrix) − 1 with the rank computed, not assumed.
std::uint64_t monorect_lower_bound(std::size_t n);

/// ⌈log2 k⌉ for k ≥ 1 from the bit length of k − 1.
std::size_t ceil_log2(std::uint64_t k);
/// ⌈log2(2^i + n − i)⌉ − i.
std::size_t psi(std::size_t i, std::size_t n);
/// Σ_i C(n,i)·2^{n−i}·2^{⌈log2(2^i+n−i)⌉} ≤ 2^d, exactly.
bool kraft_feasible(std::size_t n, std::size_t d);
/// Left-hand side of the finite-case check evaluated with doubles, the way
/// a floating-point script does it, and its verdict against 2^{n+1}.
double kraft_float_lhs(std::size_t n);
bool kraft_float_ok(std::size_t n);

/// The MUX_2 restriction to the eight implicants and eight implicates that
/// have a stable selector bit.
std::vector<TernaryWord> limited_example_rows();
std::vector<TernaryWord> limited_example_cols();
/// The 16-rectangle coloring of that matrix (row/col indices 0-based).
std::vector<Rectangle> limited_example_partition();
/// Replace every selector cell by [[1,0],[0,0]] and every data cell by
/// [[0,0],[0,1]]. Throws PreconditionError on a cell mixing both kinds.
ZeroOneMatrix limited_substitution(const CommMatrix& m, std::size_t selectors);
/// The 16×16 block matrix as printed, stored verbatim.
ZeroOneMatrix limited_fixture_matrix();
/// exact_rank(limited_fixture_matrix()).
std::size_t limited_rank_certificate();

std::string to_csv(const ZeroOneMatrix& m);
ZeroOneMatrix from_csv(std::string_view text);

}  // namespace hazkw

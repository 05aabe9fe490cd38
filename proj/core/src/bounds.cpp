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

#include "hazkw/bounds.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hazkw {

ZeroOneMatrix::ZeroOneMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ZeroOneMatrix ZeroOneMatrix::from_rows(
    const std::vector<std::vector<int>>& rows) {
  ZeroOneMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_)
      throw ArityError("matrix rows differ in length");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void ZeroOneMatrix::set(std::size_t r, std::size_t c, int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("entries must be 0 or 1");
  data_.at(r * cols_ + c) = static_cast<std::uint8_t>(v);
}

ZeroOneMatrix ZeroOneMatrix::transpose() const {
  ZeroOneMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

ZeroOneMatrix ZeroOneMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t h, std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_)
    throw std::out_of_range("block exceeds the matrix");
  ZeroOneMatrix b(h, w);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) b.set(r, c, at(r0 + r, c0 + c));
  return b;
}

ZeroOneMatrix kronecker(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
  ZeroOneMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      if (!a.at(ar, ac)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          k.set(ar * b.rows() + br, ac * b.cols() + bc, b.at(br, bc));
    }
  return k;
}

namespace {

void check_subcube_n(std::size_t n) {
  if (n == 0 || n > kMaxSubcubeN)
    throw BudgetError("subcube matrix supports n in [1, " +
                      std::to_string(kMaxSubcubeN) + "]");
}

std::vector<TernaryWord> all_words(std::size_t n) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= 3;
  std::vector<TernaryWord> out;
  out.reserve(count);
  std::vector<Trit> t(n);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (std::size_t i = n; i-- > 0;) {
      t[i] = static_cast<Trit>(rest % 3);
      rest /= 3;
    }
    out.emplace_back(t);
  }
  return out;
}

}  // namespace

ZeroOneMatrix subcube_intersect_matrix(std::size_t n) {
  check_subcube_n(n);
  const std::vector<TernaryWord> words = all_words(n);
  ZeroOneMatrix m(words.size(), words.size());
  for (std::size_t r = 0; r < words.size(); ++r)
    for (std::size_t c = 0; c < words.size(); ++c)
      m.set(r, c, subcubes_intersect(words[r], words[c]) ? 1 : 0);
  return m;
}

ZeroOneMatrix subcube_intersect_kronecker(std::size_t n) {
  check_subcube_n(n);
  const ZeroOneMatrix base =
      ZeroOneMatrix::from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
  ZeroOneMatrix m = base;
  for (std::size_t i = 1; i < n; ++i) m = kronecker(m, base);
  return m;
}

namespace {

// Bareiss elimination; returns false if a machine-integer step overflowed.
template <typename T, typename Step>
std::size_t bareiss(std::vector<T>& a, std::size_t rows, std::size_t cols,
                    Step&& step) {
  T prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(a[p * cols + j], a[rank * cols + j]);
    const T pivot = a[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      T* row = &a[i * cols];
      const T lead = row[c];
      const T* prow = &a[rank * cols];
      for (std::size_t j = c + 1; j < cols; ++j)
        step(row[j], pivot, lead, prow[j], prev);
      row[c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

struct Overflow {};

}  // namespace

std::size_t exact_rank(const ZeroOneMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  try {
    std::vector<std::int64_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.at(r, c);
    return bareiss(a, rows, cols,
                   [](std::int64_t& x, std::int64_t pivot, std::int64_t lead,
                      std::int64_t y, std::int64_t prev) {
                     if (lead == 0 && pivot == prev) return;
                     std::int64_t p, q, d;
                     if (__builtin_mul_overflow(x, pivot, &p) ||
                         __builtin_mul_overflow(lead, y, &q) ||
                         __builtin_sub_overflow(p, q, &d))
                       throw Overflow{};
                     x = d / prev;
                   });
  } catch (const Overflow&) {
  }
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.at(r, c);
  return bareiss(a, rows, cols,
                 [](mpz_class& x, const mpz_class& pivot, const mpz_class& lead,
                    const mpz_class& y, const mpz_class& prev) {
                   if (lead == 0 && pivot == prev) return;
                   x = x * pivot - lead * y;
                   mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
                 });
}

std::uint64_t monorect_lower_bound(std::size_t n) {
  return 2 * exact_rank(subcube_intersect_kronecker(n)) - 1;
}

std::size_t ceil_log2(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("log of zero");
  return k == 1 ? 0 : static_cast<std::size_t>(64 - __builtin_clzll(k - 1));
}

std::size_t psi(std::size_t i, std::size_t n) {
  if (i > n) throw std::out_of_range("psi needs 0 <= i <= n");
  if (n >= 63) {
    // 2^i + n − i exceeds 64 bits; compute the bit length on big integers.
    mpz_class k = 1;
    k <<= i;
    k += n - i;
    k -= 1;
    return mpz_sizeinbase(k.get_mpz_t(), 2) - i;
  }
  return ceil_log2((std::uint64_t{1} << i) + n - i) - i;
}

bool kraft_feasible(std::size_t n, std::size_t d) {
  mpz_class lhs = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    mpz_class term;
    mpz_bin_uiui(term.get_mpz_t(), n, i);
    // 2^{n−i} · 2^{⌈log2(2^i+n−i)⌉} = 2^{n + psi(i, n)}.
    term <<= n + psi(i, n);
    lhs += term;
  }
  mpz_class rhs = 1;
  rhs <<= d;
  return lhs <= rhs;
}

double kraft_float_lhs(std::size_t n) {
  auto blog = [](double k) { return std::log2(k); };
  auto float_psi = [&](std::size_t i) {
    return static_cast<int>(
               std::ceil(blog(std::ldexp(1.0, static_cast<int>(i)) +
                              static_cast<double>(n - i)))) -
           static_cast<int>(i);
  };
  const std::size_t t =
      static_cast<std::size_t>(std::ceil(blog(static_cast<double>(n))));
  double lhs = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, i);
    lhs += b.get_d() * std::ldexp(1.0, float_psi(i) - 1);
  }
  for (std::size_t i = t; i < n; ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, i);
    lhs += b.get_d();
  }
  return lhs + 0.5;
}

bool kraft_float_ok(std::size_t n) {
  return std::ldexp(1.0, static_cast<int>(n + 1)) >= kraft_float_lhs(n);
}

// ---------------------------------------------------------------------------
// Limited-hazard example

namespace {

std::vector<TernaryWord> parse_all(std::initializer_list<const char*> words) {
  std::vector<TernaryWord> out;
  for (const char* w : words) out.push_back(TernaryWord::parse(w));
  return out;
}

}  // namespace

std::vector<TernaryWord> limited_example_rows() {
  return parse_all({"001uuu", "0u11uu", "01u1uu", "u01u1u", "u1u1u1",
                    "10uu1u", "1uuu11", "11uuu1"});
}

std::vector<TernaryWord> limited_example_cols() {
  return parse_all({"000uuu", "0u00uu", "01u0uu", "u00u0u", "u1u0u0",
                    "10uu0u", "1uuu00", "11uuu0"});
}

std::vector<Rectangle> limited_example_partition() {
  // Coordinates: s1 = 1, s2 = 2, x00 = 3, x01 = 4, x10 = 5, x11 = 6.
  return {
      {{0, 1, 2}, {5, 6, 7}, 1}, {{5, 6, 7}, {0, 1, 2}, 1},
      {{3}, {0, 1}, 3},          {{4}, {1, 2}, 4},
      {{3}, {2}, 2},             {{4}, {0}, 2},
      {{0, 1}, {0, 1, 3}, 3},    {{0}, {2, 4}, 2},
      {{2}, {0, 3}, 2},          {{1}, {2, 4}, 4},
      {{2}, {1, 2, 4}, 4},       {{3, 5, 6}, {3, 5, 6}, 5},
      {{4, 6, 7}, {4, 7}, 6},    {{3, 5}, {4, 7}, 2},
      {{4, 7}, {3, 5}, 2},       {{4, 7}, {6}, 6},
  };
}

ZeroOneMatrix limited_substitution(const CommMatrix& m, std::size_t selectors) {
  ZeroOneMatrix out(2 * m.num_rows(), 2 * m.num_cols());
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t c = 0; c < m.num_cols(); ++c) {
      const auto cell = m.cell(r, c);
      const bool sel = std::any_of(cell.begin(), cell.end(),
                                   [&](std::size_t i) { return i <= selectors; });
      const bool dat = std::any_of(cell.begin(), cell.end(),
                                   [&](std::size_t i) { return i > selectors; });
      if (sel && dat)
        throw PreconditionError("cell mixes selector and data answers");
      if (sel) out.set(2 * r, 2 * c, 1);
      if (dat) out.set(2 * r + 1, 2 * c + 1, 1);
    }
  }
  return out;
}

ZeroOneMatrix limited_fixture_matrix() {
  return ZeroOneMatrix::from_rows({
      {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0},
      {0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0},
      {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0},
      {0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0},
      {0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0},
      {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
      {1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0},
      {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1},
      {1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
  });
}

std::size_t limited_rank_certificate() {
  return exact_rank(limited_fixture_matrix());
}

std::string to_csv(const ZeroOneMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += m.at(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

ZeroOneMatrix from_csv(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::size_t pos = 0;
  std::size_t line_start = 0;
  std::vector<int> row;
  bool expect_value = true;
  for (; pos <= text.size(); ++pos) {
    const char ch = pos < text.size() ? text[pos] : '\n';
    if (ch == '0' || ch == '1') {
      if (!expect_value) throw ParseError("missing ',' in CSV", pos);
      row.push_back(ch - '0');
      expect_value = false;
    } else if (ch == ',') {
      if (expect_value) throw ParseError("empty CSV field", pos);
      expect_value = true;
    } else if (ch == '\n') {
      if (!row.empty()) {
        if (expect_value) throw ParseError("trailing ',' in CSV", pos);
        if (!rows.empty() && row.size() != rows.front().size())
          throw ParseError("CSV rows differ in length", line_start);
        rows.push_back(std::move(row));
        row.clear();
      }
      expect_value = true;
      line_start = pos + 1;
    } else if (ch != ' ' && ch != '\r' && ch != '\t') {
      throw ParseError("CSV entries must be 0 or 1", pos);
    }
  }
  return ZeroOneMatrix::from_rows(rows);
}

}  // namespace hazkw

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
#include <iosfwd>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazkw/errors.hpp"

namespace hazkw {

/// Kleene value. The enumerator order is the evaluation order 0 < u < 1, so
/// AND and OR are min and max on the underlying value.
enum class Trit : std::uint8_t { Zero = 0, U = 1, One = 2 };

constexpr Trit trit_and(Trit a, Trit b) noexcept { return a < b ? a : b; }
constexpr Trit trit_or(Trit a, Trit b) noexcept { return a < b ? b : a; }
constexpr Trit trit_not(Trit a) noexcept {
  return static_cast<Trit>(2 - static_cast<std::uint8_t>(a));
}
constexpr bool is_stable(Trit a) noexcept { return a != Trit::U; }
constexpr Trit trit_of(bool b) noexcept { return b ? Trit::One : Trit::Zero; }

/// Rank used when sorting words: u < 0 < 1.
constexpr int sort_rank(Trit a) noexcept {
  switch (a) {
    case Trit::U: return 0;
    case Trit::Zero: return 1;
    case Trit::One: return 2;
  }
  return 0;
}

char to_char(Trit a) noexcept;
Trit trit_from_char(char c);  // throws ParseError on anything but 0, 1, u
std::ostream& operator<<(std::ostream& os, Trit a);

class BoolWord;

/// Fixed-length word over {0,u,1}. Coordinates are 1-based via `at`;
/// `operator[]` is the 0-based container view.
class TernaryWord {
 public:
  TernaryWord() = default;
  explicit TernaryWord(std::vector<Trit> trits);
  TernaryWord(std::size_t length, Trit fill);

  /// Parses "01u..." (case-insensitive u, '|' separators ignored).
  static TernaryWord parse(std::string_view text);

  std::size_t size() const noexcept { return trits_.size(); }
  Trit operator[](std::size_t index) const noexcept { return trits_[index]; }
  Trit at(std::size_t coord) const;
  std::span<const Trit> trits() const noexcept { return trits_; }

  TernaryWord with(std::size_t coord, Trit value) const;
  std::size_t count_unstable() const noexcept;
  std::size_t count_stable() const noexcept { return size() - count_unstable(); }
  bool is_boolean() const noexcept { return count_unstable() == 0; }
  BoolWord to_bool() const;  // throws PreconditionError if a u is present

  std::string str() const;

  friend bool operator==(const TernaryWord&, const TernaryWord&) = default;

 private:
  std::vector<Trit> trits_;
};

/// Lexicographic order with u < 0 < 1 per position; shorter words first.
bool lex_less(const TernaryWord& a, const TernaryWord& b) noexcept;

struct LexLess {
  bool operator()(const TernaryWord& a, const TernaryWord& b) const noexcept {
    return lex_less(a, b);
  }
};

std::ostream& operator<<(std::ostream& os, const TernaryWord& w);

/// Word over {0,1}.
class BoolWord {
 public:
  BoolWord() = default;
  explicit BoolWord(std::vector<bool> bits);

  static BoolWord parse(std::string_view text);
  /// Word whose big-endian binary value (first bit most significant) is
  /// `value`.
  static BoolWord from_index(std::size_t length, std::uint64_t value);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t index) const { return bits_[index]; }
  bool at(std::size_t coord) const;

  /// bin(a): the natural number a_1 a_2 ... a_n, a_1 most significant.
  std::uint64_t index() const;
  TernaryWord to_ternary() const;
  std::string str() const;

  friend bool operator==(const BoolWord&, const BoolWord&) = default;

 private:
  std::vector<bool> bits_;
};

std::ostream& operator<<(std::ostream& os, const BoolWord& w);

/// Range over the resolutions of a ternary word in lexicographic order (the
/// first unstable position is the most significant, 0 before 1).
class ResolutionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = BoolWord;
    using difference_type = std::ptrdiff_t;
    using pointer = const BoolWord*;
    using reference = const BoolWord&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept {
      return a.step_ == b.step_;
    }

   private:
    friend class ResolutionRange;
    iterator(const ResolutionRange* range, std::uint64_t step);
    void materialize();

    const ResolutionRange* range_ = nullptr;
    std::uint64_t step_ = 0;
    BoolWord current_;
  };

  explicit ResolutionRange(TernaryWord alpha);

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(nullptr, count_); }
  std::uint64_t size() const noexcept { return count_; }

 private:
  TernaryWord alpha_;
  std::vector<std::size_t> unstable_;  // 0-based positions of u
  std::uint64_t count_;
};

ResolutionRange resolutions(const TernaryWord& alpha);

bool is_resolution(const BoolWord& a, const TernaryWord& alpha);

/// alpha ⊑ beta in the instability order: every position of alpha is u or
/// equal to beta's.
bool stability_leq(const TernaryWord& alpha, const TernaryWord& beta);

/// x ⊕ u·y: u wherever y is 1, x elsewhere.
TernaryWord compose_unstable(const BoolWord& x, const BoolWord& y);

/// True iff the two subcubes of resolutions share a point.
bool subcubes_intersect(const TernaryWord& alpha, const TernaryWord& beta);

}  // namespace hazkw

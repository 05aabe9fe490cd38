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

#include "hazkw/ternary.hpp"

#include <algorithm>
#include <ostream>

namespace hazkw {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw ArityError(std::string(op) + ": length mismatch (" +
                     std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

char to_char(Trit a) noexcept {
  switch (a) {
    case Trit::Zero: return '0';
    case Trit::One: return '1';
    case Trit::U: return 'u';
  }
  return '?';
}

Trit trit_from_char(char c) {
  switch (c) {
    case '0': return Trit::Zero;
    case '1': return Trit::One;
    case 'u':
    case 'U': return Trit::U;
    default:
      throw ParseError(std::string("invalid trit '") + c + "'", 0);
  }
}

std::ostream& operator<<(std::ostream& os, Trit a) { return os << to_char(a); }

// ---------------------------------------------------------------------------
// TernaryWord

TernaryWord::TernaryWord(std::vector<Trit> trits) : trits_(std::move(trits)) {}

TernaryWord::TernaryWord(std::size_t length, Trit fill) : trits_(length, fill) {}

TernaryWord TernaryWord::parse(std::string_view text) {
  std::vector<Trit> trits;
  trits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '|' || c == '_') continue;
    switch (c) {
      case '0': trits.push_back(Trit::Zero); break;
      case '1': trits.push_back(Trit::One); break;
      case 'u':
      case 'U': trits.push_back(Trit::U); break;
      default:
        throw ParseError(std::string("invalid trit '") + c + "' in word", i);
    }
  }
  if (trits.empty()) throw ParseError("empty word", 0);
  return TernaryWord(std::move(trits));
}

Trit TernaryWord::at(std::size_t coord) const {
  if (coord == 0 || coord > trits_.size()) {
    throw std::out_of_range("coordinate " + std::to_string(coord) +
                            " outside [1, " + std::to_string(trits_.size()) +
                            "]");
  }
  return trits_[coord - 1];
}

TernaryWord TernaryWord::with(std::size_t coord, Trit value) const {
  (void)at(coord);
  TernaryWord copy = *this;
  copy.trits_[coord - 1] = value;
  return copy;
}

std::size_t TernaryWord::count_unstable() const noexcept {
  return static_cast<std::size_t>(
      std::count(trits_.begin(), trits_.end(), Trit::U));
}

BoolWord TernaryWord::to_bool() const {
  std::vector<bool> bits(trits_.size());
  for (std::size_t i = 0; i < trits_.size(); ++i) {
    if (trits_[i] == Trit::U) {
      throw PreconditionError("word " + str() + " is not Boolean");
    }
    bits[i] = trits_[i] == Trit::One;
  }
  return BoolWord(std::move(bits));
}

std::string TernaryWord::str() const {
  std::string out(trits_.size(), '?');
  std::transform(trits_.begin(), trits_.end(), out.begin(), to_char);
  return out;
}

bool lex_less(const TernaryWord& a, const TernaryWord& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ra = sort_rank(a[i]);
    const int rb = sort_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const TernaryWord& w) {
  return os << w.str();
}

// ---------------------------------------------------------------------------
// BoolWord

BoolWord::BoolWord(std::vector<bool> bits) : bits_(std::move(bits)) {}

BoolWord BoolWord::parse(std::string_view text) {
  const TernaryWord w = TernaryWord::parse(text);
  return w.to_bool();
}

BoolWord BoolWord::from_index(std::size_t length, std::uint64_t value) {
  std::vector<bool> bits(length);
  for (std::size_t i = 0; i < length; ++i) {
    bits[length - 1 - i] = ((value >> i) & 1U) != 0;
  }
  return BoolWord(std::move(bits));
}

bool BoolWord::at(std::size_t coord) const {
  if (coord == 0 || coord > bits_.size()) {
    throw std::out_of_range("coordinate " + std::to_string(coord) +
                            " outside [1, " + std::to_string(bits_.size()) +
                            "]");
  }
  return bits_[coord - 1];
}

std::uint64_t BoolWord::index() const {
  if (bits_.size() > 63) throw BudgetError("word too long to index");
  std::uint64_t value = 0;
  for (bool b : bits_) value = (value << 1) | (b ? 1U : 0U);
  return value;
}

TernaryWord BoolWord::to_ternary() const {
  std::vector<Trit> trits(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) trits[i] = trit_of(bits_[i]);
  return TernaryWord(std::move(trits));
}

std::string BoolWord::str() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::ostream& operator<<(std::ostream& os, const BoolWord& w) {
  return os << w.str();
}

// ---------------------------------------------------------------------------
// Resolutions

ResolutionRange::ResolutionRange(TernaryWord alpha) : alpha_(std::move(alpha)) {
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] == Trit::U) unstable_.push_back(i);
  }
  if (unstable_.size() > 63) throw BudgetError("too many unstable positions");
  count_ = std::uint64_t{1} << unstable_.size();
}

ResolutionRange::iterator::iterator(const ResolutionRange* range,
                                    std::uint64_t step)
    : range_(range), step_(step) {
  if (range_ != nullptr) materialize();
}

void ResolutionRange::iterator::materialize() {
  if (step_ >= range_->count_) return;
  const auto& alpha = range_->alpha_;
  std::vector<bool> bits(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) bits[i] = alpha[i] == Trit::One;
  const std::size_t k = range_->unstable_.size();
  for (std::size_t j = 0; j < k; ++j) {
    bits[range_->unstable_[j]] = ((step_ >> (k - 1 - j)) & 1U) != 0;
  }
  current_ = BoolWord(std::move(bits));
}

ResolutionRange::iterator& ResolutionRange::iterator::operator++() {
  ++step_;
  materialize();
  return *this;
}

ResolutionRange resolutions(const TernaryWord& alpha) {
  return ResolutionRange(alpha);
}

bool is_resolution(const BoolWord& a, const TernaryWord& alpha) {
  require_same_length(a.size(), alpha.size(), "is_resolution");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (alpha[i] != Trit::U && alpha[i] != trit_of(a[i])) return false;
  }
  return true;
}

bool stability_leq(const TernaryWord& alpha, const TernaryWord& beta) {
  require_same_length(alpha.size(), beta.size(), "stability_leq");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != Trit::U && alpha[i] != beta[i]) return false;
  }
  return true;
}

TernaryWord compose_unstable(const BoolWord& x, const BoolWord& y) {
  require_same_length(x.size(), y.size(), "compose_unstable");
  std::vector<Trit> trits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    trits[i] = y[i] ? Trit::U : trit_of(x[i]);
  }
  return TernaryWord(std::move(trits));
}

bool subcubes_intersect(const TernaryWord& alpha, const TernaryWord& beta) {
  require_same_length(alpha.size(), beta.size(), "subcubes_intersect");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (is_stable(alpha[i]) && is_stable(beta[i]) && alpha[i] != beta[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace hazkw

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
#include <vector>

#include "hazkw/hazard.hpp"
#include "hazkw/ternary.hpp"

namespace hazkw {

enum class Polarity : std::uint8_t { Implicant, Implicate };

/// Words on which f̃ is 1 (implicants) or 0 (implicates), sorted with
/// `lex_less` and duplicate-free.
struct ImplicantSet {
  Polarity polarity = Polarity::Implicant;
  std::vector<TernaryWord> words;

  std::size_t size() const noexcept { return words.size(); }
  bool empty() const noexcept { return words.empty(); }
  auto begin() const noexcept { return words.begin(); }
  auto end() const noexcept { return words.end(); }
  const TernaryWord& operator[](std::size_t i) const { return words[i]; }
  bool contains(const TernaryWord& w) const;
  /// Position of `w` in `words`, or size() if absent.
  std::size_t index_of(const TernaryWord& w) const;
};

Trit polarity_value(Polarity p) noexcept;

ImplicantSet prime_implicants(const TruthTable& f);
ImplicantSet prime_implicates(const TruthTable& f);
ImplicantSet prime_implicants(const ExtensionTable& ext);
ImplicantSet prime_implicates(const ExtensionTable& ext);

/// Every implicant (or implicate), prime or not, with at most `max_u`
/// unstable positions.
ImplicantSet implicants_up_to(const ExtensionTable& ext, Polarity polarity,
                              std::size_t max_u);

/// The prime implicant (or implicate) of MUX_n with the given selector part:
/// data positions indexed by resolutions of `selector` carry 1 (or 0), every
/// other data position is u.
TernaryWord mux_prime(const TernaryWord& selector, Polarity polarity);
ImplicantSet mux_prime_implicants(std::size_t n);
ImplicantSet mux_prime_implicates(std::size_t n);

/// Number of stable positions.
std::size_t implicant_size(const TernaryWord& w) noexcept;

}  // namespace hazkw

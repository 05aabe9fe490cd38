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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazkw/errors.hpp"
#include "hazkw/formula.hpp"
#include "hazkw/ternary.hpp"

namespace hazkw {

/// Explicit Boolean function on n ≤ 30 variables; entry j is f(a) with
/// bin(a) = j (first variable most significant).
class TruthTable {
 public:
  TruthTable(std::size_t num_vars, std::vector<bool> values);

  static TruthTable from_function(std::size_t num_vars,
                                  const std::function<bool(std::uint64_t)>& f);
  static TruthTable constant(std::size_t num_vars, bool value);
  static TruthTable mux(std::size_t n);  // n + 2^n variables, s1..sn first
  static TruthTable parity(std::size_t n);
  static TruthTable conjunction(std::size_t n);
  static TruthTable disjunction(std::size_t n);
  static TruthTable majority3();
  /// Evaluates `f` on every Boolean point (arity ≤ 24).
  static TruthTable of_formula(const Formula& f);

  /// Hex digits of Σ f_j·2^j, most significant digit first; optional "0x".
  /// Without `num_vars` the arity is inferred from the digit count
  /// (1 digit → 2 variables, otherwise 4·digits = 2^n).
  static TruthTable from_hex(std::string_view hex,
                             std::optional<std::size_t> num_vars = std::nullopt);
  std::string to_hex() const;

  std::size_t num_vars() const noexcept { return n_; }
  std::uint64_t rows() const noexcept { return values_.size(); }
  bool operator()(std::uint64_t index) const { return values_[index]; }
  bool operator()(const BoolWord& a) const;
  bool is_constant() const;
  bool is_monotone() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t n_;
  std::vector<bool> values_;
};

/// The hazard-free extension of a Boolean function tabulated over all of
/// {0,u,1}^n (n ≤ 14).
class ExtensionTable {
 public:
  static constexpr std::size_t kMaxVars = 14;

  explicit ExtensionTable(const TruthTable& f);

  std::size_t num_vars() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return table_.size(); }
  Trit operator[](std::uint64_t code) const noexcept { return table_[code]; }
  Trit at(const TernaryWord& alpha) const;

  /// Base-3 code of a word: first position most significant, digit values
  /// 0 → 0, 1 → 1, u → 2.
  std::uint64_t encode(const TernaryWord& alpha) const;
  TernaryWord decode(std::uint64_t code) const;

 private:
  std::size_t n_;
  std::vector<Trit> table_;
};

Trit hfe_eval(const TruthTable& f, const TernaryWord& alpha);

struct Hazard {
  TernaryWord alpha;
  Trit formula_value;
  Trit extension_value;

  friend bool operator==(const Hazard&, const Hazard&) = default;
};

struct HazardReport {
  std::vector<Hazard> hazards;
  bool empty() const noexcept { return hazards.empty(); }
};

/// The formula differs from the function at a Boolean point.
class FunctionalError : public PreconditionError {
 public:
  explicit FunctionalError(BoolWord point);
  const BoolWord& point() const noexcept { return point_; }

 private:
  BoolWord point_;
};

/// Every input (with at most `max_u` unstable positions if given) on which
/// the formula differs from the hazard-free extension, ordered by u-count
/// and then lexicographically. Throws FunctionalError first if the formula
/// does not compute `f`.
HazardReport find_hazards(const Formula& formula, const TruthTable& f,
                          std::optional<std::size_t> max_u = std::nullopt);

/// Hazard-free iff the formula is 1 on every prime implicant and 0 on every
/// prime implicate.
bool certify_hazard_free(const Formula& formula, const TruthTable& f);
bool certify_hazard_free(const Formula& formula,
                         std::span<const TernaryWord> prime_implicants,
                         std::span<const TernaryWord> prime_implicates);
/// First prime on which the formula is not stable with the right value.
std::optional<Hazard> first_certificate_violation(
    const Formula& formula, std::span<const TernaryWord> prime_implicants,
    std::span<const TernaryWord> prime_implicates);

/// 1 iff f̃(x ⊕ u·y) = u.
bool hazard_derivative(const TruthTable& f, const BoolWord& x,
                       const BoolWord& y);

}  // namespace hazkw

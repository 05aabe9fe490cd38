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

#include "hazkw/hazard.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "hazkw/implicants.hpp"

namespace hazkw {

namespace {

constexpr std::size_t kMaxTableVars = 30;
constexpr std::uint64_t kHazardSearchBudget = 200'000'000;

void check_arity(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw ArityError(std::string(what) + ": expected " + std::to_string(want) +
                     " variables, got " + std::to_string(got));
}

// Truth-table index of a word with every u read as 0, and the mask of its u
// positions in the same bit layout.
std::pair<std::uint64_t, std::uint64_t> split_word(const TernaryWord& alpha) {
  std::uint64_t base = 0;
  std::uint64_t umask = 0;
  const std::size_t n = alpha.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
    if (alpha[i] == Trit::One) base |= bit;
    if (alpha[i] == Trit::U) umask |= bit;
  }
  return {base, umask};
}

Trit hfe_masks(const TruthTable& f, std::uint64_t base, std::uint64_t umask) {
  const bool first = f(base);
  // Walk all submasks of umask.
  std::uint64_t sub = umask;
  while (sub != 0) {
    if (f(base | sub) != first) return Trit::U;
    sub = (sub - 1) & umask;
  }
  return trit_of(first);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruthTable

TruthTable::TruthTable(std::size_t num_vars, std::vector<bool> values)
    : n_(num_vars), values_(std::move(values)) {
  if (n_ > kMaxTableVars)
    throw BudgetError("truth tables are limited to " +
                      std::to_string(kMaxTableVars) + " variables");
  if (values_.size() != (std::uint64_t{1} << n_))
    throw ArityError("truth table of " + std::to_string(n_) +
                     " variables needs " +
                     std::to_string(std::uint64_t{1} << n_) + " entries");
}

TruthTable TruthTable::from_function(
    std::size_t num_vars, const std::function<bool(std::uint64_t)>& f) {
  if (num_vars > kMaxTableVars)
    throw BudgetError("truth tables are limited to " +
                      std::to_string(kMaxTableVars) + " variables");
  std::vector<bool> v(std::uint64_t{1} << num_vars);
  for (std::uint64_t j = 0; j < v.size(); ++j) v[j] = f(j);
  return TruthTable(num_vars, std::move(v));
}

TruthTable TruthTable::constant(std::size_t num_vars, bool value) {
  return from_function(num_vars, [value](std::uint64_t) { return value; });
}

TruthTable TruthTable::mux(std::size_t n) {
  if (n == 0) throw std::invalid_argument("MUX needs at least one selector");
  const std::size_t data = std::size_t{1} << n;
  const std::size_t arity = n + data;
  return from_function(arity, [data](std::uint64_t j) {
    const std::uint64_t sel = j >> data;
    // x_sel sits at variable n+1+sel, i.e. bit (data-1-sel) of the index.
    return ((j >> (data - 1 - sel)) & 1) != 0;
  });
}

TruthTable TruthTable::parity(std::size_t n) {
  return from_function(n, [](std::uint64_t j) { return std::popcount(j) % 2; });
}

TruthTable TruthTable::conjunction(std::size_t n) {
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  return from_function(n, [all](std::uint64_t j) { return j == all; });
}

TruthTable TruthTable::disjunction(std::size_t n) {
  return from_function(n, [](std::uint64_t j) { return j != 0; });
}

TruthTable TruthTable::majority3() {
  return from_function(3, [](std::uint64_t j) { return std::popcount(j) >= 2; });
}

TruthTable TruthTable::of_formula(const Formula& f) {
  if (f.num_vars() > 24)
    throw BudgetError("formula arity too large for a truth table");
  CompiledFormula c(f);
  const std::size_t n = f.num_vars();
  std::vector<Trit> in(n);
  return from_function(n, [&](std::uint64_t j) {
    for (std::size_t i = 0; i < n; ++i)
      in[i] = trit_of((j >> (n - 1 - i)) & 1);
    return c.eval(in) == Trit::One;
  });
}

TruthTable TruthTable::from_hex(std::string_view hex,
                                std::optional<std::size_t> num_vars) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X'))
    hex.remove_prefix(2);
  if (hex.empty()) throw ParseError("empty hex truth table", 0);
  std::size_t n = 0;
  if (num_vars) {
    n = *num_vars;
  } else if (hex.size() == 1) {
    n = 2;
  } else {
    const std::uint64_t bits = 4 * hex.size();
    if (!std::has_single_bit(bits))
      throw ParseError("hex length is not a power-of-two table; pass --vars",
                       0);
    n = static_cast<std::size_t>(std::countr_zero(bits));
  }
  if (n > kMaxTableVars) throw BudgetError("truth table too large");
  const std::uint64_t rows = std::uint64_t{1} << n;
  std::vector<bool> v(rows, false);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(hex[hex.size() - 1 - d])));
    int digit = 0;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else {
      throw ParseError("invalid hex digit", hex.size() - 1 - d);
    }
    for (int b = 0; b < 4; ++b) {
      if (!((digit >> b) & 1)) continue;
      const std::uint64_t j = 4 * d + static_cast<std::uint64_t>(b);
      if (j >= rows)
        throw ParseError("hex value exceeds a " + std::to_string(n) +
                             "-variable table",
                         hex.size() - 1 - d);
      v[j] = true;
    }
  }
  return TruthTable(n, std::move(v));
}

std::string TruthTable::to_hex() const {
  const std::uint64_t digits = std::max<std::uint64_t>(1, (rows() + 3) / 4);
  std::string out = "0x";
  for (std::uint64_t d = digits; d-- > 0;) {
    int digit = 0;
    for (int b = 0; b < 4; ++b) {
      const std::uint64_t j = 4 * d + static_cast<std::uint64_t>(b);
      if (j < rows() && values_[j]) digit |= 1 << b;
    }
    out += "0123456789abcdef"[digit];
  }
  return out;
}

bool TruthTable::operator()(const BoolWord& a) const {
  check_arity(a.size(), n_, "truth table lookup");
  return values_[a.index()];
}

bool TruthTable::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](bool v) { return v == values_[0]; });
}

bool TruthTable::is_monotone() const {
  for (std::uint64_t j = 0; j < rows(); ++j) {
    if (!values_[j]) continue;
    for (std::size_t i = 0; i < n_; ++i)
      if (!values_[j | (std::uint64_t{1} << i)]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ExtensionTable

ExtensionTable::ExtensionTable(const TruthTable& f) : n_(f.num_vars()) {
  if (n_ > kMaxVars)
    throw BudgetError("extension table limited to " +
                      std::to_string(kMaxVars) + " variables");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) total *= 3;
  table_.resize(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    // Lowest base-3 digit equal to 2 (u), if any.
    std::uint64_t rest = code;
    std::uint64_t weight = 1;
    std::uint64_t index = 0;
    std::uint64_t u_weight = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint64_t digit = rest % 3;
      rest /= 3;
      if (digit == 2 && u_weight == 0) u_weight = weight;
      index |= static_cast<std::uint64_t>(digit == 1) << i;
      weight *= 3;
    }
    if (u_weight == 0) {
      table_[code] = trit_of(f(index));
    } else {
      const Trit v0 = table_[code - 2 * u_weight];
      const Trit v1 = table_[code - u_weight];
      table_[code] = v0 == v1 ? v0 : Trit::U;
    }
  }
}

std::uint64_t ExtensionTable::encode(const TernaryWord& alpha) const {
  check_arity(alpha.size(), n_, "extension table lookup");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t digit =
        alpha[i] == Trit::Zero ? 0 : (alpha[i] == Trit::One ? 1 : 2);
    code = 3 * code + digit;
  }
  return code;
}

TernaryWord ExtensionTable::decode(std::uint64_t code) const {
  std::vector<Trit> t(n_);
  for (std::size_t i = n_; i-- > 0;) {
    const std::uint64_t digit = code % 3;
    code /= 3;
    t[i] = digit == 0 ? Trit::Zero : (digit == 1 ? Trit::One : Trit::U);
  }
  return TernaryWord(std::move(t));
}

Trit ExtensionTable::at(const TernaryWord& alpha) const {
  return table_[encode(alpha)];
}

Trit hfe_eval(const TruthTable& f, const TernaryWord& alpha) {
  check_arity(alpha.size(), f.num_vars(), "hfe_eval");
  auto [base, umask] = split_word(alpha);
  return hfe_masks(f, base, umask);
}

// ---------------------------------------------------------------------------
// Hazards

FunctionalError::FunctionalError(BoolWord point)
    : PreconditionError("formula disagrees with the function at " +
                        point.str()),
      point_(std::move(point)) {}

HazardReport find_hazards(const Formula& formula, const TruthTable& f,
                          std::optional<std::size_t> max_u) {
  const std::size_t n = f.num_vars();
  check_arity(formula.num_vars(), n, "find_hazards");
  const std::size_t k = std::min(max_u.value_or(n), n);

  std::uint64_t work = 0;
  for (std::size_t j = 0; j <= k; ++j)
    work += binomial(n, j) << (n - j);
  if (work > kHazardSearchBudget)
    throw BudgetError("hazard search over " + std::to_string(work) +
                      " inputs exceeds the budget; use certification");

  CompiledFormula c(formula);
  std::vector<Trit> in(n);
  auto load = [&](std::uint64_t base, std::uint64_t umask) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
      in[i] = (umask & bit) ? Trit::U : trit_of(base & bit);
    }
  };

  for (std::uint64_t j = 0; j < f.rows(); ++j) {
    load(j, 0);
    if ((c.eval(in) == Trit::One) != f(j))
      throw FunctionalError(BoolWord::from_index(n, j));
  }

  HazardReport report;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << n) - 1;
  for (std::size_t u = 1; u <= k; ++u) {
    std::vector<Hazard> level;
    // Gosper's hack over u-subsets.
    std::uint64_t umask = (std::uint64_t{1} << u) - 1;
    while (umask <= full) {
      const std::uint64_t stable = full & ~umask;
      std::uint64_t s = 0;
      for (;;) {
        const Trit ext = hfe_masks(f, s, umask);
        if (ext != Trit::U) {
          load(s, umask);
          const Trit got = c.eval(in);
          if (got != ext) level.push_back({TernaryWord(in), got, ext});
        }
        if (s == stable) break;
        s = (s - stable) & stable;
      }
      const std::uint64_t low = umask & (~umask + 1);
      const std::uint64_t ripple = umask + low;
      if (ripple == 0 || ripple > full + 1) break;
      umask = (((ripple ^ umask) >> 2) / low) | ripple;
    }
    std::sort(level.begin(), level.end(), [](const Hazard& a, const Hazard& b) {
      return lex_less(a.alpha, b.alpha);
    });
    report.hazards.insert(report.hazards.end(), level.begin(), level.end());
  }
  return report;
}

std::optional<Hazard> first_certificate_violation(
    const Formula& formula, std::span<const TernaryWord> prime_implicants,
    std::span<const TernaryWord> prime_implicates) {
  CompiledFormula c(formula);
  auto check = [&](std::span<const TernaryWord> words,
                   Trit want) -> std::optional<Hazard> {
    for (const TernaryWord& w : words) {
      check_arity(w.size(), formula.num_vars(), "certify_hazard_free");
      const Trit got = c.eval(w.trits());
      if (got != want) return Hazard{w, got, want};
    }
    return std::nullopt;
  };
  if (auto h = check(prime_implicants, Trit::One)) return h;
  return check(prime_implicates, Trit::Zero);
}

bool certify_hazard_free(const Formula& formula,
                         std::span<const TernaryWord> prime_implicants,
                         std::span<const TernaryWord> prime_implicates) {
  return !first_certificate_violation(formula, prime_implicants,
                                      prime_implicates);
}

bool certify_hazard_free(const Formula& formula, const TruthTable& f) {
  check_arity(formula.num_vars(), f.num_vars(), "certify_hazard_free");
  CompiledFormula c(formula);
  const std::size_t n = f.num_vars();
  std::vector<Trit> in(n);
  for (std::uint64_t j = 0; j < f.rows(); ++j) {
    for (std::size_t i = 0; i < n; ++i)
      in[i] = trit_of((j >> (n - 1 - i)) & 1);
    if ((c.eval(in) == Trit::One) != f(j))
      throw FunctionalError(BoolWord::from_index(n, j));
  }
  const ImplicantSet ones = prime_implicants(f);
  const ImplicantSet zeros = prime_implicates(f);
  return certify_hazard_free(formula, ones.words, zeros.words);
}

bool hazard_derivative(const TruthTable& f, const BoolWord& x,
                       const BoolWord& y) {
  check_arity(x.size(), f.num_vars(), "hazard_derivative");
  return hfe_eval(f, compose_unstable(x, y)) == Trit::U;
}

}  // namespace hazkw

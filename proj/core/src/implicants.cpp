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

#include "hazkw/implicants.hpp"

#include <algorithm>

namespace hazkw {

namespace {

ImplicantSet sorted(Polarity p, std::vector<TernaryWord> words) {
  std::sort(words.begin(), words.end(), LexLess{});
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return ImplicantSet{p, std::move(words)};
}

ImplicantSet primes(const ExtensionTable& ext, Polarity p) {
  const Trit target = polarity_value(p);
  const std::size_t n = ext.num_vars();
  std::vector<std::uint64_t> weight(n);
  for (std::size_t i = n, w = 1; i-- > 0; w *= 3) weight[i] = w;

  std::vector<TernaryWord> out;
  for (std::uint64_t code = 0; code < ext.size(); ++code) {
    if (ext[code] != target) continue;
    bool prime = true;
    std::uint64_t rest = code;
    for (std::size_t i = n; i-- > 0 && prime;) {
      const std::uint64_t digit = rest % 3;
      rest /= 3;
      if (digit == 2) continue;
      // Raise digit 0 or 1 to 2 (u).
      const std::uint64_t widened = code + (2 - digit) * weight[i];
      if (ext[widened] == target) prime = false;
    }
    if (prime) out.push_back(ext.decode(code));
  }
  return sorted(p, std::move(out));
}

}  // namespace

bool ImplicantSet::contains(const TernaryWord& w) const {
  return std::binary_search(words.begin(), words.end(), w, LexLess{});
}

std::size_t ImplicantSet::index_of(const TernaryWord& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w, LexLess{});
  if (it == words.end() || !(*it == w)) return words.size();
  return static_cast<std::size_t>(it - words.begin());
}

Trit polarity_value(Polarity p) noexcept {
  return p == Polarity::Implicant ? Trit::One : Trit::Zero;
}

ImplicantSet prime_implicants(const ExtensionTable& ext) {
  return primes(ext, Polarity::Implicant);
}

ImplicantSet prime_implicates(const ExtensionTable& ext) {
  return primes(ext, Polarity::Implicate);
}

ImplicantSet prime_implicants(const TruthTable& f) {
  return prime_implicants(ExtensionTable(f));
}

ImplicantSet prime_implicates(const TruthTable& f) {
  return prime_implicates(ExtensionTable(f));
}

ImplicantSet implicants_up_to(const ExtensionTable& ext, Polarity polarity,
                              std::size_t max_u) {
  const Trit target = polarity_value(polarity);
  std::vector<TernaryWord> out;
  for (std::uint64_t code = 0; code < ext.size(); ++code) {
    if (ext[code] != target) continue;
    TernaryWord w = ext.decode(code);
    if (w.count_unstable() <= max_u) out.push_back(std::move(w));
  }
  return sorted(polarity, std::move(out));
}

TernaryWord mux_prime(const TernaryWord& selector, Polarity polarity) {
  const std::size_t n = selector.size();
  if (n == 0 || n > 20)
    throw std::invalid_argument("MUX selector count must be in [1, 20]");
  const Trit mark = polarity_value(polarity);
  std::vector<Trit> t(selector.trits().begin(), selector.trits().end());
  t.resize(n + (std::size_t{1} << n), Trit::U);
  for (const BoolWord& b : resolutions(selector)) t[n + b.index()] = mark;
  return TernaryWord(std::move(t));
}

namespace {

ImplicantSet mux_primes(std::size_t n, Polarity p) {
  if (n == 0 || n > 12)
    throw std::invalid_argument("MUX prime enumeration supports n in [1, 12]");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= 3;
  std::vector<TernaryWord> out;
  out.reserve(count);
  std::vector<Trit> sel(n);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (std::size_t i = n; i-- > 0;) {
      sel[i] = static_cast<Trit>(rest % 3);
      rest /= 3;
    }
    out.push_back(mux_prime(TernaryWord(sel), p));
  }
  return sorted(p, std::move(out));
}

}  // namespace

ImplicantSet mux_prime_implicants(std::size_t n) {
  return mux_primes(n, Polarity::Implicant);
}

ImplicantSet mux_prime_implicates(std::size_t n) {
  return mux_primes(n, Polarity::Implicate);
}

std::size_t implicant_size(const TernaryWord& w) noexcept {
  return w.count_stable();
}

}  // namespace hazkw

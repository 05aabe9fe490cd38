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

#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/kw_game.hpp"

namespace hazkw {

/// Brent-style balancing that keeps ternary semantics: a separator G with at
/// least half the leaves is pulled out and F becomes the hazard-free
/// MUX_1(G, F[G:=0], F[G:=1]) with every part balanced recursively. Returns
/// the input unchanged when its size is at most 3 or its depth is at most
/// ⌈log2 size⌉ + 1.
Formula depth_reduce(const Formula& f);

/// Communication matrix restricted to the given implicants (rows) and
/// implicates (cols). Throws PreconditionError unless every row is an
/// implicant, every column an implicate, and every Boolean 1-input (0-input)
/// is a resolution of some row (column).
CommMatrix limited_matrix(const TruthTable& f, std::vector<TernaryWord> rows,
                          std::vector<TernaryWord> cols);

struct KbitBounds {
  std::uint64_t subsets = 0;  // Σ_{i≤k} C(n, i)
  std::uint64_t max_size = 0;
  std::uint64_t max_depth = 0;
};

KbitBounds kbit_bounds(std::size_t n, std::size_t k, std::uint64_t base_size,
                       std::uint64_t base_depth);

struct KbitConstruction {
  CommMatrix matrix;  // implicants × implicates with at most k u's
  ProtocolTree protocol;
  Formula formula;
};

/// Protocol over the ≤k-u game: Alice announces her u-positions A, Bob his
/// u-positions B and his bits on A∖B, Alice her bits on B∖A; with A∩B set to
/// 0 both hold Boolean inputs and follow `base` through the classical game.
/// Throws FunctionalError if `base` does not compute `f`.
KbitConstruction kbit_construction(const TruthTable& f, std::size_t k,
                                   const Formula& base);
/// The formula of the construction; the constant 0 or 1 when f is constant.
Formula kbit_hazard_free(const TruthTable& f, std::size_t k,
                         const Formula& base);

}  // namespace hazkw

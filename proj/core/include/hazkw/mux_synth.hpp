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
#include <vector>

#include "hazkw/formula.hpp"
#include "hazkw/hazard.hpp"
#include "hazkw/kw_game.hpp"
#include "hazkw/ternary.hpp"

namespace hazkw {

/// The prime-implicant × prime-implicate matrix of MUX_n, built in closed
/// form (no truth table), so it scales to n = 6.
CommMatrix mux_matrix(std::size_t n);

/// Size 2·3^n − 1, depth 3n: F = (F0 ∧ (F1 ∨ ¬s)) ∨ (F1 ∧ s) over the first
/// selector, F0/F1 the formulas for the two halves of the data inputs.
Formula synth_size_optimal(std::size_t n);

struct MuxProtocol {
  CommMatrix matrix;
  ProtocolTree protocol;
};

/// Protocol of depth 2n+1 for the MUX_n game. Sub-instances carry extra
/// "sentinel" rows that are answered by one fixed literal; they never reach
/// the top level.
MuxProtocol depth_optimal_protocol(std::size_t n);
/// protocol_to_formula of the protocol above: depth 2n+1 and size
/// 2.25·3^n − n/2 − 1.25.
Formula synth_depth_optimal(std::size_t n);

/// OR over all prime implicants (balanced), each a balanced AND of its
/// literals. Size 4^n + 2n·3^{n−1}.
Formula synth_alt2_huffman(std::size_t n);

/// Codeword length of a prime implicant with `i` unstable selector bits in
/// the prefix code that shapes the OR tree of the depth-optimal DNF.
std::size_t alt2_codeword_length(std::size_t n, std::size_t i);
/// DNF of depth exactly 2n+2 (n ≥ 2; n = 1 returns the Huffman DNF).
Formula synth_alt2_depth_optimal(std::size_t n);

/// Monotone formula in (t, y) for the hazard derivative of MUX_n at (s, x),
/// laid out like MUX_n itself: t_1..t_n then y_0..y_{2^n−1}.
Formula synth_derivative_formula(std::size_t n, const BoolWord& s,
                                 const BoolWord& x);

/// Hazard-free formula for an arbitrary f: the size-optimal MUX_n with f's
/// truth table on the data inputs, constants folded away.
Formula synth_universal(const TruthTable& f);

}  // namespace hazkw

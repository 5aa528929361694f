/*
 * Copyright 2026 The rrsynth authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RRSYNTH_IO_HPP
#define RRSYNTH_IO_HPP

#include <string>

#include "rrsynth/meanpayoff.hpp"
#include "rrsynth/rrcore.hpp"

namespace rrsynth {

/// Parses the line-oriented game format:
///
///   [vertices]
///   q 1          # name owner
///   p 0
///   [edges]
///   q p
///   [conditions]
///   Q: q | P: p | penalty: affine 2 1
///   [defaults]
///   penalty identity
///
/// '#' starts a comment. The penalty segment may be omitted when a default
/// penalty is declared (identity if none). Unknown sections or segment keys
/// are rejected with a ParseError carrying line/column; game-level violations
/// (dead ends, unknown vertices) raise SemanticError.
RRGame parse_game(const std::string& text);

std::string serialize_game(const RRGame& game);

/// Standalone mean-payoff game format: like the game format but with
/// `from to weight` lines in [edges] and no [conditions].
MeanPayoffGame parse_mpg(const std::string& text);

std::string serialize_mpg(const MeanPayoffGame& game);

/// Strategy files are JSON documents with the memory state list, init table,
/// update table and next-move table, all keyed by names. parse(serialize(s))
/// reproduces the strategy extensionally.
std::string serialize_strategy(const Arena& arena, const FiniteStateStrategy& sigma);

FiniteStateStrategy parse_strategy(const Arena& arena, const std::string& text);

/// DOT export: Player 0 vertices as circles, Player 1 as squares,
/// deterministic output order.
std::string export_dot(const Arena& arena);
/// Adds condition annotations (Q1, P2, ...) to the vertex labels.
std::string export_dot(const RRGame& game);
/// Adds the weight to every edge.
std::string export_dot(const MeanPayoffGame& game);

}  // namespace rrsynth

#endif  // RRSYNTH_IO_HPP

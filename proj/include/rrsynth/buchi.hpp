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

#ifndef RRSYNTH_BUCHI_HPP
#define RRSYNTH_BUCHI_HPP

#include <vector>

#include "rrsynth/arena.hpp"
#include "rrsynth/rrcore.hpp"
#include "rrsynth/value.hpp"

namespace rrsynth {

/// A game won by Player 0 iff the accepting set is visited infinitely often.
struct BuchiGame {
  Arena arena;
  std::vector<bool> accepting;  // per vertex
};

/// Exact winning regions with uniform positional strategies. The regions
/// partition the vertex set; strategy moves are meaningful for vertices of
/// the respective player inside their region (kNoVertex elsewhere).
struct SolveResult {
  std::vector<bool> winning_0;
  std::vector<bool> winning_1;
  std::vector<Vertex> strategy_0;  // per vertex
  std::vector<Vertex> strategy_1;
};

struct AttractorResult {
  std::vector<bool> in_attractor;
  /// For player-owned vertices outside the target: a successor of strictly
  /// smaller BFS rank (lowest index among those). kNoVertex elsewhere.
  std::vector<Vertex> moves;
  std::vector<std::uint32_t> rank;  // BFS layer; 0 on the target
};

/// Least set containing the target and closed under: player vertices with an
/// edge into the set, opponent vertices with all edges inside. `alive`
/// restricts to a subgame (empty = whole arena).
AttractorResult attractor(const Arena& arena, const std::vector<bool>& target,
                          int player, const std::vector<bool>& alive = {});

/// Classical fixpoint solver for Buchi games. Player 0's strategy forces
/// infinitely many visits to the accepting set from everywhere in her region.
SolveResult solve_buchi(const BuchiGame& game);

/// The request-tracking memory for the reduction to Buchi games:
/// states (R, c, f) with R the set of open requests, c a cyclic counter over
/// the conditions and f the flag recording whether c moved in this update.
/// Requires k >= 2; pad a game with empty conditions first if needed.
/// |M| = k * 2^(k+1).
MemoryStructure rr_buchi_memory(const RRGame& game);

/// Says whether a memory state of rr_buchi_memory has its flag set (the
/// accepting states of the reduction).
bool rr_buchi_flag(const RRGame& game, StateId m);

/// Result of solving an RR game: winning regions on the original arena and
/// finite-state winning strategies driven by the request-tracking memory.
struct RRSolveResult {
  std::vector<bool> winning_0;
  std::vector<bool> winning_1;
  FiniteStateStrategy strategy_0;
  FiniteStateStrategy strategy_1;
};

/// Solves an RR game by the reduction through the request-tracking memory:
/// builds the product, solves the Buchi game whose accepting states carry a
/// set flag, and projects regions through v -> (v, init(v)).
RRSolveResult solve_rr(const RRGame& game, std::size_t product_cap = kDefaultProductCap);

/// Upper bound sum_j f_j(s * k * 2^k) on the value of some uniform winning
/// strategy, where s is the arena size and k the number of conditions.
BigNat value_bound(const RRGame& game);

}  // namespace rrsynth

#endif  // RRSYNTH_BUCHI_HPP

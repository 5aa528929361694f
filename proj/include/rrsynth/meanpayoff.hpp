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

#ifndef RRSYNTH_MEANPAYOFF_HPP
#define RRSYNTH_MEANPAYOFF_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rrsynth/arena.hpp"
#include "rrsynth/value.hpp"

namespace rrsynth {

/// A plain weighted digraph for cycle-mean computations.
struct WeightedDigraph {
  struct Edge {
    Vertex to;
    std::int64_t weight;
  };
  std::vector<std::vector<Edge>> succ;

  std::size_t num_vertices() const { return succ.size(); }
};

/// Maximum mean weight over cycles reachable from `source`, exact;
/// nullopt when no cycle is reachable.
std::optional<BigRat> karp_max_mean(const WeightedDigraph& g, Vertex source);

/// karp_max_mean for every vertex at once (one SCC decomposition).
std::vector<std::optional<BigRat>> max_mean_per_vertex(const WeightedDigraph& g);

/// Minimum variant of the above.
std::vector<std::optional<BigRat>> min_mean_per_vertex(const WeightedDigraph& g);

/// A game where Player 0 minimizes the limit superior of the mean edge weight
/// and Player 1 maximizes the limit inferior. Weights are integers in [-W, W].
struct MeanPayoffGame {
  Arena arena;
  std::vector<std::vector<std::int64_t>> weights;  // parallel to arena successors
  std::int64_t max_abs_weight = 0;
};

/// Validates the weight table shape and computes the weight bound.
MeanPayoffGame make_mpg(Arena arena, std::vector<std::vector<std::int64_t>> weights);

/// The game's graph with Player `player`'s choices fixed to `moves` (one
/// successor per owned vertex) and the opponent's edges kept.
WeightedDigraph restrict_player(const MeanPayoffGame& g, int player,
                                const std::vector<Vertex>& moves);

WeightedDigraph to_digraph(const MeanPayoffGame& g);

/// Exact values and uniform positional optimal strategies:
/// every play following strategy_0 from v has limsup mean <= value[v], and
/// every play following strategy_1 from v has liminf mean >= value[v].
/// Values are rationals with denominator at most |V|.
struct MPGSolution {
  std::vector<BigRat> value;
  std::vector<Vertex> strategy_0;
  std::vector<Vertex> strategy_1;
};

MPGSolution solve_mpg(const MeanPayoffGame& g);

/// Independent brute force: the componentwise minimum, over all positional
/// strategies of Player 0, of the reachable max mean cycle. Throws
/// BudgetExceededError when Player 0 has more than `budget` strategies.
std::vector<BigRat> mpg_oracle(const MeanPayoffGame& g, std::uint64_t budget = 1'000'000);

}  // namespace rrsynth

#endif  // RRSYNTH_MEANPAYOFF_HPP

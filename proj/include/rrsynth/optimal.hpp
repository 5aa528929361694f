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

#ifndef RRSYNTH_OPTIMAL_HPP
#define RRSYNTH_OPTIMAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rrsynth/arena.hpp"
#include "rrsynth/meanpayoff.hpp"
#include "rrsynth/rrcore.hpp"
#include "rrsynth/value.hpp"

namespace rrsynth {

/// Per-condition waiting-time caps used to build the synthesis product.
/// With the theoretical thresholds the synthesized strategy is optimal
/// outright; with smaller caps it is optimal among strategies that keep all
/// waiting times within the caps.
struct Thresholds {
  std::vector<std::uint64_t> caps;  // one per condition, each >= 1
  enum class Provenance { Theoretical, User } provenance = Provenance::User;
};

Thresholds uniform_caps(std::size_t k, std::uint64_t cap);

/// The capped waiting-vector memory: one state per vector below the caps
/// (lexicographic order, named "(t1,...,tk)") plus an absorbing "bot" state
/// entered when some cap is exceeded without a response.
MemoryStructure waiting_vector_memory(const RRGame& game, const Thresholds& caps,
                                      std::size_t product_cap = kDefaultProductCap);

/// Decodes a state of waiting_vector_memory back into a waiting vector.
WaitingVector decode_waiting_state(const RRGame& game, const Thresholds& caps, StateId m);

/// The mean-payoff game whose plays track capped waiting vectors: edges out
/// of (v, t) weigh sum_j f_j(t_j); edges out of bot states weigh
/// 1 + sum_j f_j(cap_j), the maximal weight.
struct RRMeanPayoff {
  MeanPayoffGame mpg;
  MemoryStructure memory;
  std::int64_t max_weight;
};

RRMeanPayoff rr_to_mpg(const RRGame& game, const Thresholds& caps,
                       std::size_t product_cap = kDefaultProductCap);

struct SynthesisOutcome {
  FiniteStateStrategy strategy;    // Player 0, waiting-vector memory
  std::vector<Value> values;       // per original vertex; "inf" when no
                                   // cap-bounded strategy avoids the sink
  std::size_t mpg_vertices;
  std::int64_t mpg_max_weight;
};

/// Solves the waiting-vector mean-payoff game and transfers values and the
/// optimal strategy back to the RR game.
SynthesisOutcome synthesize_optimal(const RRGame& game, const Thresholds& caps,
                                    std::size_t product_cap = kDefaultProductCap);

struct EvalResult {
  Value value;
  std::vector<std::uint64_t> max_waiting;  // per condition, over explored states
  std::size_t explored_states;
};

/// Value of a Player-0 finite-state strategy from a vertex: the supremum of
/// play values over all consistent plays. Builds the graph of
/// (vertex, strategy memory, waiting vector) states with Player 1 free and
/// evaluates its maximum reachable cycle mean. Waiting times are capped at
/// |V| * |M| + 1 per condition: a prefix exceeding that pins down a repeated
/// (vertex, memory) pair with the request open throughout, which the opponent
/// can iterate forever, so reaching the cap already proves value infinity.
EvalResult evaluate_strategy(const RRGame& game, const FiniteStateStrategy& sigma,
                             Vertex from);

/// Independent optimality oracle: the minimum, over Player-0 positional
/// strategies of the rr_to_mpg product, of the maximum reachable cycle mean
/// from (v, init(v)). Enumerates strategies restricted to their reachable
/// part (assignments on unreachable vertices cannot change any value) and
/// short-circuits once the sink is reachable, where every completion yields
/// exactly the sink weight. Throws BudgetExceededError beyond `budget`
/// enumerated strategies.
std::vector<Value> rr_oracle_optimal(const RRGame& game, const Thresholds& caps,
                                     std::uint64_t budget = 1'000'000,
                                     std::size_t product_cap = kDefaultProductCap);

/// Built-in example games.
RRGame gen_fig1();
RRGame gen_fig2();
RRGame gen_blades(std::uint64_t k);  // k >= 2
RRGame gen_builtin(const std::string& name, std::optional<std::uint64_t> k);

/// Canonical strategies for the built-in games.
FiniteStateStrategy positional_strategy(const Arena& arena, int player,
                                        const std::vector<Vertex>& moves);
FiniteStateStrategy fig1_alternating_strategy(const RRGame& fig1);
FiniteStateStrategy blades_smallest_open_strategy(const RRGame& blades);
FiniteStateStrategy blades_always_revisit_adversary(const RRGame& blades);

/// Supplies Player 1's moves one at a time; serves the CLI interactive mode.
using AdversaryCallback = std::function<Vertex(const PlayPrefix&, Vertex)>;

struct ScriptedAdversary {
  std::vector<Vertex> moves;
};

using Adversary = std::variant<FiniteStateStrategy, ScriptedAdversary, AdversaryCallback>;

struct PlayoutStep {
  Vertex v;
  WaitingVector wait;
  BigNat penalty;
};

/// Deterministic play of the requested length (number of positions), with
/// waiting vectors and penalties per position.
std::vector<PlayoutStep> playout(const RRGame& game, const FiniteStateStrategy& sigma0,
                                 const Adversary& adversary, Vertex from,
                                 std::size_t steps);

}  // namespace rrsynth

#endif  // RRSYNTH_OPTIMAL_HPP

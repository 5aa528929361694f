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

#include "rrsynth/optimal.hpp"

#include <bit>

namespace rrsynth {

RRGame gen_fig1() {
  Arena arena = ArenaBuilder()
                    .vertex("q", 1)
                    .vertex("r1", 1)
                    .vertex("r2", 1)
                    .vertex("r12", 1)
                    .vertex("p", 0)
                    .vertex("p1", 0)
                    .vertex("p2", 0)
                    .vertex("e", 0)
                    .edge("q", "r1")
                    .edge("q", "r2")
                    .edge("q", "r12")
                    .edge("r1", "p")
                    .edge("r2", "p")
                    .edge("r12", "p")
                    .edge("p", "p1")
                    .edge("p", "p2")
                    .edge("p", "e")
                    .edge("p1", "e")
                    .edge("p2", "e")
                    .edge("e", "q")
                    .build();
  std::vector<RRCondition> conds(2);
  conds[0].request = {arena.vertex("r1"), arena.vertex("r12")};
  conds[0].response = {arena.vertex("p1")};
  conds[1].request = {arena.vertex("r2"), arena.vertex("r12")};
  conds[1].response = {arena.vertex("p2")};
  return make_rr_game(std::move(arena), std::move(conds),
                      {PenaltyFn::identity(), PenaltyFn::identity()});
}

RRGame gen_fig2() {
  // Both loops through v: the right one answers condition 1 within 2 steps,
  // the left one answers condition 2 within 4.
  Arena arena = ArenaBuilder()
                    .vertex("v", 0)
                    .vertex("r", 0)
                    .vertex("lu", 0)
                    .vertex("l", 0)
                    .vertex("ld", 0)
                    .edge("v", "r")
                    .edge("r", "v")
                    .edge("v", "lu")
                    .edge("lu", "l")
                    .edge("l", "ld")
                    .edge("ld", "v")
                    .build();
  std::vector<RRCondition> conds(2);
  conds[0].request = {arena.vertex("v")};
  conds[0].response = {arena.vertex("r")};
  conds[1].request = {arena.vertex("v")};
  conds[1].response = {arena.vertex("ld")};
  return make_rr_game(std::move(arena), std::move(conds),
                      {PenaltyFn::identity(), PenaltyFn::identity()});
}

RRGame gen_blades(std::uint64_t k) {
  if (k < 2) throw SemanticError("the blades game needs k >= 2");
  if (k > 20) throw SizeLimitError("blades game capped at k = 20");
  ArenaBuilder b;
  b.vertex("i", 0).vertex("h", 0);
  for (std::uint64_t j = 1; j <= k; ++j) {
    std::string cj = "c" + std::to_string(j);
    std::string sj = "s" + std::to_string(j);
    std::string vj = "v" + std::to_string(j);
    b.vertex(cj, 1).vertex(sj, 1).vertex(vj, 1);
  }
  b.edge("i", "h");
  for (std::uint64_t j = 1; j <= k; ++j) {
    std::string cj = "c" + std::to_string(j);
    std::string sj = "s" + std::to_string(j);
    std::string vj = "v" + std::to_string(j);
    b.edge("h", cj).edge(cj, sj).edge(cj, vj).edge(vj, "h").edge(sj, sj);
  }
  Arena arena = b.build();

  std::vector<RRCondition> conds(k);
  std::vector<PenaltyFn> penalties(k, PenaltyFn::identity());
  for (std::uint64_t j = 1; j <= k; ++j) {
    conds[j - 1].request.push_back(arena.vertex("i"));
    conds[j - 1].response.push_back(arena.vertex("c" + std::to_string(j)));
    // s_l answers every condition above l
    for (std::uint64_t l = 1; l < j; ++l)
      conds[j - 1].response.push_back(arena.vertex("s" + std::to_string(l)));
    // v_l re-requests every condition below l
    for (std::uint64_t l = j + 1; l <= k; ++l)
      conds[j - 1].request.push_back(arena.vertex("v" + std::to_string(l)));
  }
  return make_rr_game(std::move(arena), std::move(conds), std::move(penalties));
}

RRGame gen_builtin(const std::string& name, std::optional<std::uint64_t> k) {
  if (name == "fig1") {
    if (k) throw SemanticError("fig1 takes no parameter");
    return gen_fig1();
  }
  if (name == "fig2") {
    if (k) throw SemanticError("fig2 takes no parameter");
    return gen_fig2();
  }
  if (name == "blades") {
    if (!k) throw SemanticError("blades needs --k");
    return gen_blades(*k);
  }
  throw SemanticError("unknown builtin game '" + name + "' (fig1, fig2, blades)");
}

FiniteStateStrategy positional_strategy(const Arena& arena, int player,
                                        const std::vector<Vertex>& moves) {
  const std::size_t n = arena.num_vertices();
  FiniteStateStrategy fss;
  fss.player = player;
  fss.memory.state_names = {"m0"};
  fss.memory.init.assign(n, 0);
  fss.memory.update_table.assign(n, 0);
  fss.next_move_table.assign(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != player) continue;
    Vertex target = moves[v] == kNoVertex ? arena.successors(v).front() : moves[v];
    fss.next_move_table[v] = target;
  }
  require_compatible(arena, fss);
  return fss;
}

FiniteStateStrategy fig1_alternating_strategy(const RRGame& fig1) {
  const Arena& arena = fig1.arena;
  const std::size_t n = arena.num_vertices();
  Vertex p = arena.vertex("p");
  Vertex p1 = arena.vertex("p1");
  Vertex p2 = arena.vertex("p2");

  FiniteStateStrategy fss;
  fss.player = 0;
  fss.memory.state_names = {"answer1", "answer2"};
  fss.memory.init.assign(n, 0);
  fss.memory.update_table.assign(2 * n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (StateId m = 0; m < 2; ++m) {
      StateId next = m;
      if (v == p1) next = 1;  // just answered 1, answer 2 next
      if (v == p2) next = 0;
      fss.memory.update_table[static_cast<std::size_t>(m) * n + v] = next;
    }
  }
  fss.next_move_table.assign(n * 2, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != 0) continue;
    for (StateId m = 0; m < 2; ++m) {
      Vertex target = v == p ? (m == 0 ? p1 : p2) : arena.successors(v).front();
      fss.set_next_move(v, m, target);
    }
  }
  require_compatible(arena, fss);
  return fss;
}

FiniteStateStrategy blades_smallest_open_strategy(const RRGame& blades) {
  const Arena& arena = blades.arena;
  const std::size_t n = arena.num_vertices();
  const std::size_t k = blades.k();
  Vertex hub = arena.vertex("h");
  const std::size_t states = std::size_t{1} << k;  // set of open conditions

  FiniteStateStrategy fss;
  fss.player = 0;
  fss.memory.state_names.reserve(states);
  for (std::size_t s = 0; s < states; ++s)
    fss.memory.state_names.push_back("open" + std::to_string(s));
  fss.memory.init.assign(n, 0);
  for (Vertex v = 0; v < n; ++v)
    fss.memory.init[v] =
        static_cast<StateId>(blades.request_mask(v) & ~blades.response_mask(v));
  fss.memory.update_table.assign(states * n, 0);
  for (std::size_t s = 0; s < states; ++s)
    for (Vertex v = 0; v < n; ++v)
      fss.memory.update_table[s * n + v] = static_cast<StateId>(
          (s | blades.request_mask(v)) & ~blades.response_mask(v));

  fss.next_move_table.assign(n * states, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != 0) continue;
    for (std::size_t s = 0; s < states; ++s) {
      Vertex target;
      if (v == hub) {
        std::size_t j = s == 0 ? 1 : static_cast<std::size_t>(std::countr_zero(s)) + 1;
        target = arena.vertex("c" + std::to_string(j));
      } else {
        target = arena.successors(v).front();
      }
      fss.set_next_move(v, static_cast<StateId>(s), target);
    }
  }
  require_compatible(arena, fss);
  return fss;
}

FiniteStateStrategy blades_always_revisit_adversary(const RRGame& blades) {
  const Arena& arena = blades.arena;
  std::vector<Vertex> moves(arena.num_vertices(), kNoVertex);
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    if (arena.owner(v) != 1) continue;
    const std::string& nm = arena.name(v);
    if (nm.size() > 1 && nm[0] == 'c') {
      moves[v] = arena.vertex("v" + nm.substr(1));
    } else {
      moves[v] = arena.successors(v).front();
    }
  }
  return positional_strategy(arena, 1, moves);
}

}  // namespace rrsynth

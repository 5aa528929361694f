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

#include "rrsynth/buchi.hpp"

#include <deque>
#include <optional>

namespace rrsynth {

AttractorResult attractor(const Arena& arena, const std::vector<bool>& target,
                          int player, const std::vector<bool>& alive) {
  const std::size_t n = arena.num_vertices();
  std::vector<bool> is_alive = alive.empty() ? std::vector<bool>(n, true) : alive;

  AttractorResult res;
  res.in_attractor.assign(n, false);
  res.moves.assign(n, kNoVertex);
  res.rank.assign(n, std::numeric_limits<std::uint32_t>::max());

  std::vector<std::uint32_t> cnt(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!is_alive[v] || arena.owner(v) == player) continue;
    std::uint32_t c = 0;
    for (Vertex u : arena.successors(v))
      if (is_alive[u]) ++c;
    cnt[v] = c;
  }

  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (is_alive[v] && target[v]) {
      res.in_attractor[v] = true;
      res.rank[v] = 0;
      queue.push_back(v);
    }
  }

  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : arena.predecessors(u)) {
      if (!is_alive[w] || res.in_attractor[w]) continue;
      bool absorb = false;
      if (arena.owner(w) == player) {
        absorb = true;
      } else if (--cnt[w] == 0) {
        absorb = true;
      }
      if (absorb) {
        res.in_attractor[w] = true;
        res.rank[w] = res.rank[u] + 1;
        queue.push_back(w);
      }
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (!res.in_attractor[v] || target[v] || arena.owner(v) != player) continue;
    for (Vertex u : arena.successors(v)) {
      if (is_alive[u] && res.in_attractor[u] && res.rank[u] < res.rank[v]) {
        res.moves[v] = u;
        break;  // successors are sorted, so this is the lowest index
      }
    }
  }
  return res;
}

SolveResult solve_buchi(const BuchiGame& game) {
  const Arena& arena = game.arena;
  const std::size_t n = arena.num_vertices();

  SolveResult res;
  res.winning_0.assign(n, false);
  res.winning_1.assign(n, false);
  res.strategy_0.assign(n, kNoVertex);
  res.strategy_1.assign(n, kNoVertex);

  std::vector<bool> alive(n, true);
  std::size_t alive_count = n;

  while (alive_count > 0) {
    std::vector<bool> target(n, false);
    for (Vertex v = 0; v < n; ++v) target[v] = alive[v] && game.accepting[v];

    AttractorResult reach = attractor(arena, target, 0, alive);

    std::vector<bool> trap(n, false);
    bool trap_empty = true;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && !reach.in_attractor[v]) {
        trap[v] = true;
        trap_empty = false;
      }
    }

    if (trap_empty) {
      // Player 0 wins everything that is still alive: reach the accepting set
      // with decreasing rank, then restart from it.
      for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        res.winning_0[v] = true;
        if (arena.owner(v) != 0) continue;
        if (target[v]) {
          for (Vertex u : arena.successors(v)) {
            if (alive[u]) {
              res.strategy_0[v] = u;
              break;
            }
          }
        } else {
          res.strategy_0[v] = reach.moves[v];
        }
      }
      break;
    }

    AttractorResult escape = attractor(arena, trap, 1, alive);
    for (Vertex v = 0; v < n; ++v) {
      if (!escape.in_attractor[v]) continue;
      res.winning_1[v] = true;
      if (arena.owner(v) == 1) {
        if (trap[v]) {
          // Stay inside the trap; such a successor exists because the vertex
          // escaped the Player-0 attractor.
          for (Vertex u : arena.successors(v)) {
            if (alive[u] && trap[u]) {
              res.strategy_1[v] = u;
              break;
            }
          }
        } else {
          res.strategy_1[v] = escape.moves[v];
        }
      }
      alive[v] = false;
      --alive_count;
    }
  }
  return res;
}

namespace {

struct BuchiMemoryLayout {
  std::size_t k;
  // state id = ((R * k) + (c - 1)) * 2 + f, R over bitmasks, c in 1..k
  StateId encode(std::uint64_t r, std::uint64_t c, std::uint64_t f) const {
    return static_cast<StateId>(((r * k) + (c - 1)) * 2 + f);
  }
  std::uint64_t r_of(StateId m) const { return (m >> 1) / k; }
  std::uint64_t c_of(StateId m) const { return (m >> 1) % k + 1; }
  std::uint64_t f_of(StateId m) const { return m & 1; }
};

}  // namespace

MemoryStructure rr_buchi_memory(const RRGame& game) {
  const std::size_t k = game.k();
  if (k < 2)
    throw SemanticError("the request-tracking memory needs at least 2 conditions; "
                        "pad the game with empty conditions first");
  if (k > 20)
    throw SizeLimitError("request-tracking memory for k = " + std::to_string(k) +
                         " conditions would have " + std::to_string(k) + " * 2^" +
                         std::to_string(k + 1) + " states");
  BuchiMemoryLayout layout{k};
  const std::size_t n = game.arena.num_vertices();
  const std::size_t num_states = k * (std::size_t{1} << (k + 1));

  MemoryStructure mem;
  mem.state_names.reserve(num_states);
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r)
    for (std::uint64_t c = 1; c <= k; ++c)
      for (std::uint64_t f = 0; f <= 1; ++f)
        mem.state_names.push_back("R" + std::to_string(r) + "c" + std::to_string(c) +
                                  "f" + std::to_string(f));

  mem.init.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t r = game.request_mask(v) & ~game.response_mask(v);
    mem.init[v] = layout.encode(r, 1, 0);
  }

  mem.update_table.resize(num_states * n);
  for (StateId m = 0; m < num_states; ++m) {
    std::uint64_t r = layout.r_of(m);
    std::uint64_t c = layout.c_of(m);
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t r2 = (r | game.request_mask(v)) & ~game.response_mask(v);
      std::uint64_t c2 = c;
      if (!((r >> (c - 1)) & 1 && (r2 >> (c - 1)) & 1)) c2 = c % k + 1;
      std::uint64_t f2 = (c2 != c) ? 1 : 0;
      mem.update_table[static_cast<std::size_t>(m) * n + v] = layout.encode(r2, c2, f2);
    }
  }
  return mem;
}

bool rr_buchi_flag(const RRGame& game, StateId m) {
  (void)game;
  return (m & 1) != 0;
}

namespace {

RRGame pad_conditions(const RRGame& game, std::size_t to) {
  std::vector<RRCondition> conditions = game.conditions;
  std::vector<PenaltyFn> penalties = game.penalties;
  while (conditions.size() < to) {
    conditions.push_back(RRCondition{});
    penalties.push_back(PenaltyFn::identity());
  }
  return make_rr_game(game.arena, std::move(conditions), std::move(penalties));
}

}  // namespace

RRSolveResult solve_rr(const RRGame& game, std::size_t product_cap) {
  // An empty condition is never requested, so padding to two conditions
  // changes neither waiting times nor winners.
  std::optional<RRGame> padded;
  if (game.k() < 2) padded = pad_conditions(game, 2);
  const RRGame& work = padded ? *padded : game;

  MemoryStructure mem = rr_buchi_memory(work);
  Arena prod = product(work.arena, mem, product_cap);
  const std::size_t n = work.arena.num_vertices();
  const std::size_t msize = mem.num_states();

  BuchiGame bg{prod, std::vector<bool>(prod.num_vertices(), false)};
  for (std::size_t i = 0; i < prod.num_vertices(); ++i)
    bg.accepting[i] = rr_buchi_flag(work, static_cast<StateId>(i % msize));

  SolveResult solved = solve_buchi(bg);

  RRSolveResult res;
  res.winning_0.assign(n, false);
  res.winning_1.assign(n, false);
  for (Vertex v = 0; v < n; ++v) {
    Vertex pv = product_vertex(work.arena, mem, v, mem.init[v]);
    res.winning_0[v] = solved.winning_0[pv];
    res.winning_1[v] = solved.winning_1[pv];
  }

  auto package = [&](int player, const std::vector<Vertex>& prod_strategy) {
    FiniteStateStrategy fss;
    fss.memory = mem;
    fss.player = player;
    fss.next_move_table.assign(n * msize, kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
      if (work.arena.owner(v) != player) continue;
      for (StateId m = 0; m < msize; ++m) {
        Vertex pv = product_vertex(work.arena, mem, v, m);
        Vertex target = prod_strategy[pv];
        Vertex move = target == kNoVertex ? work.arena.successors(v).front()
                                          : static_cast<Vertex>(target / msize);
        fss.set_next_move(v, m, move);
      }
    }
    return fss;
  };
  res.strategy_0 = package(0, solved.strategy_0);
  res.strategy_1 = package(1, solved.strategy_1);
  return res;
}

BigNat value_bound(const RRGame& game) {
  const std::size_t k = game.k();
  if (k == 0) return 0;
  BigNat arg = BigNat(game.arena.num_vertices()) * k * (BigNat(1) << k);
  BigNat sum = 0;
  for (const PenaltyFn& f : game.penalties) sum += f.eval(arg);
  return sum;
}

}  // namespace rrsynth

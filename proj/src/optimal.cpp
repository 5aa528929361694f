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

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace rrsynth {

Thresholds uniform_caps(std::size_t k, std::uint64_t cap) {
  if (cap == 0) throw SemanticError("caps must be at least 1");
  return Thresholds{std::vector<std::uint64_t>(k, cap), Thresholds::Provenance::User};
}

namespace {

void check_caps(const RRGame& game, const Thresholds& caps) {
  if (caps.caps.size() != game.k())
    throw SemanticError("need one cap per condition");
  for (std::uint64_t c : caps.caps)
    if (c == 0) throw SemanticError("caps must be at least 1");
}

/// Number of capped vectors, without the bot state; saturates at limit + 1.
std::uint64_t vector_state_count(const Thresholds& caps, std::size_t limit) {
  std::uint64_t count = 1;
  for (std::uint64_t c : caps.caps) {
    if (c >= limit || count > limit / (c + 1) + 1) return limit + 1;
    count *= c + 1;
    if (count > limit) return limit + 1;
  }
  return count;
}

StateId encode_vector(const Thresholds& caps, const std::vector<std::uint64_t>& t) {
  std::uint64_t id = 0;
  for (std::size_t j = 0; j < t.size(); ++j) id = id * (caps.caps[j] + 1) + t[j];
  return static_cast<StateId>(id);
}

std::vector<std::uint64_t> decode_vector(const Thresholds& caps, StateId m) {
  std::vector<std::uint64_t> t(caps.caps.size(), 0);
  std::uint64_t id = m;
  for (std::size_t j = caps.caps.size(); j-- > 0;) {
    t[j] = id % (caps.caps[j] + 1);
    id /= caps.caps[j] + 1;
  }
  return t;
}

}  // namespace

MemoryStructure waiting_vector_memory(const RRGame& game, const Thresholds& caps,
                                      std::size_t product_cap) {
  check_caps(game, caps);
  const std::size_t n = game.arena.num_vertices();
  std::uint64_t vecs = vector_state_count(caps, product_cap);
  if (vecs > product_cap || (vecs + 1) * n > product_cap)
    throw SizeLimitError("waiting-vector memory would exceed " +
                         std::to_string(product_cap) + " product vertices");
  const std::size_t num_states = static_cast<std::size_t>(vecs) + 1;
  const StateId bot = static_cast<StateId>(vecs);

  MemoryStructure mem;
  mem.state_names.reserve(num_states);
  for (StateId m = 0; m < bot; ++m) {
    WaitingVector w{decode_vector(caps, m), false};
    mem.state_names.push_back(w.str());
  }
  mem.state_names.push_back("bot");

  mem.init.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<std::uint64_t> t(game.k(), 0);
    for (std::size_t j = 0; j < game.k(); ++j)
      t[j] = (game.in_request(j, v) && !game.in_response(j, v)) ? 1 : 0;
    mem.init[v] = encode_vector(caps, t);
  }

  mem.update_table.resize(num_states * n);
  for (StateId m = 0; m < num_states; ++m) {
    WaitingVector t =
        m == bot ? WaitingVector::bottom(game.k()) : WaitingVector{decode_vector(caps, m), false};
    for (Vertex v = 0; v < n; ++v) {
      WaitingVector t2 = waiting_step(t, v, game, caps.caps);
      mem.update_table[static_cast<std::size_t>(m) * n + v] =
          t2.bot ? bot : encode_vector(caps, t2.t);
    }
  }
  return mem;
}

WaitingVector decode_waiting_state(const RRGame& game, const Thresholds& caps, StateId m) {
  std::uint64_t vecs = 1;
  for (std::uint64_t c : caps.caps) vecs *= c + 1;
  if (m >= vecs) return WaitingVector::bottom(game.k());
  return WaitingVector{decode_vector(caps, m), false};
}

RRMeanPayoff rr_to_mpg(const RRGame& game, const Thresholds& caps, std::size_t product_cap) {
  MemoryStructure mem = waiting_vector_memory(game, caps, product_cap);
  Arena prod = product(game.arena, mem, product_cap);
  const std::size_t msize = mem.num_states();
  const StateId bot = static_cast<StateId>(msize - 1);

  std::int64_t max_weight = 1;
  for (std::size_t j = 0; j < game.k(); ++j)
    max_weight += game.penalties[j].eval64(caps.caps[j]);

  // Weight of every edge out of (v, m), depending only on m.
  std::vector<std::int64_t> state_weight(msize);
  for (StateId m = 0; m < bot; ++m) {
    std::vector<std::uint64_t> t = decode_vector(caps, m);
    std::int64_t w = 0;
    for (std::size_t j = 0; j < game.k(); ++j) w += game.penalties[j].eval64(t[j]);
    state_weight[m] = w;
  }
  state_weight[bot] = max_weight;

  std::vector<std::vector<std::int64_t>> weights(prod.num_vertices());
  for (Vertex pv = 0; pv < prod.num_vertices(); ++pv) {
    StateId m = static_cast<StateId>(pv % msize);
    weights[pv].assign(prod.successors(pv).size(), state_weight[m]);
  }
  return RRMeanPayoff{make_mpg(std::move(prod), std::move(weights)), std::move(mem),
                      max_weight};
}

SynthesisOutcome synthesize_optimal(const RRGame& game, const Thresholds& caps,
                                    std::size_t product_cap) {
  RRMeanPayoff rm = rr_to_mpg(game, caps, product_cap);
  MPGSolution sol = solve_mpg(rm.mpg);
  const std::size_t n = game.arena.num_vertices();
  const std::size_t msize = rm.memory.num_states();

  SynthesisOutcome out;
  out.mpg_vertices = rm.mpg.arena.num_vertices();
  out.mpg_max_weight = rm.max_weight;
  out.values.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    Vertex pv = product_vertex(game.arena, rm.memory, v, rm.memory.init[v]);
    const BigRat& nu = sol.value[pv];
    if (nu == BigRat(rm.max_weight)) {
      out.values.push_back(Value::infinity());
    } else {
      out.values.push_back(Value(nu));
    }
  }

  out.strategy.memory = rm.memory;
  out.strategy.player = 0;
  out.strategy.next_move_table.assign(n * msize, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (game.arena.owner(v) != 0) continue;
    for (StateId m = 0; m < msize; ++m) {
      Vertex pv = product_vertex(game.arena, rm.memory, v, m);
      Vertex target = sol.strategy_0[pv];
      Vertex move = target == kNoVertex ? game.arena.successors(v).front()
                                        : static_cast<Vertex>(target / msize);
      out.strategy.set_next_move(v, m, move);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EvalResult evaluate_strategy(const RRGame& game, const FiniteStateStrategy& sigma,
                             Vertex from) {
  if (sigma.player != 0)
    throw SemanticError("evaluate_strategy expects a Player 0 strategy");
  require_compatible(game.arena, sigma);
  if (from >= game.arena.num_vertices()) throw SemanticError("unknown start vertex");

  const std::size_t n = game.arena.num_vertices();
  const std::size_t msize = sigma.memory.num_states();
  const std::uint64_t cap = static_cast<std::uint64_t>(n) * msize + 1;
  std::vector<std::uint64_t> caps(game.k(), cap);

  struct Key {
    Vertex v;
    StateId m;
    std::vector<std::uint64_t> t;
    bool operator<(const Key& o) const {
      if (v != o.v) return v < o.v;
      if (m != o.m) return m < o.m;
      return t < o.t;
    }
  };

  std::map<Key, Vertex> index;
  std::vector<Key> states;
  std::vector<std::int64_t> weight;
  EvalResult res;
  res.max_waiting.assign(game.k(), 0);

  auto intern = [&](Vertex v, StateId m, const WaitingVector& t) -> Vertex {
    Key key{v, m, t.t};
    auto [it, fresh] = index.emplace(key, static_cast<Vertex>(states.size()));
    if (fresh) {
      states.push_back(key);
      std::int64_t w = 0;
      for (std::size_t j = 0; j < game.k(); ++j) {
        w += game.penalties[j].eval64(t.t[j]);
        res.max_waiting[j] = std::max(res.max_waiting[j], t.t[j]);
      }
      weight.push_back(w);
    }
    return it->second;
  };

  WaitingVector t0 = waiting_step(WaitingVector::zero(game.k()), from, game, caps);
  if (t0.bot) {  // possible only for degenerate caps; not in practice
    res.value = Value::infinity();
    return res;
  }
  Vertex start = intern(from, sigma.memory.init[from], t0);

  WeightedDigraph graph;
  std::deque<Vertex> work{start};
  std::vector<bool> expanded;
  while (!work.empty()) {
    Vertex s = work.front();
    work.pop_front();
    if (s < expanded.size() && expanded[s]) continue;
    if (expanded.size() <= s) expanded.resize(s + 1, false);
    expanded[s] = true;
    Key key = states[s];

    std::vector<Vertex> moves;
    if (game.arena.owner(key.v) == 0) {
      moves.push_back(sigma.next_move(key.v, key.m));
    } else {
      moves = game.arena.successors(key.v);
    }
    for (Vertex u : moves) {
      WaitingVector t{key.t, false};
      WaitingVector t2 = waiting_step(t, u, game, caps);
      if (t2.bot) {
        // A waiting time beyond |V|*|M| pins down a repeated (vertex, memory)
        // pair with the request open throughout; the opponent can iterate
        // that loop forever, so the strategy value is already infinite.
        res.value = Value::infinity();
        res.explored_states = states.size();
        return res;
      }
      StateId m2 = sigma.memory.update(key.m, u, n);
      Vertex s2 = intern(u, m2, t2);
      if (graph.succ.size() <= std::max(s, s2)) graph.succ.resize(states.size());
      graph.succ[s].push_back({s2, weight[s]});
      if (s2 >= expanded.size() || !expanded[s2]) work.push_back(s2);
    }
  }
  graph.succ.resize(states.size());

  auto best = karp_max_mean(graph, start);
  if (!best) throw std::logic_error("dead-end-free evaluation graph without cycle");
  res.value = Value(*best);
  res.explored_states = states.size();
  return res;
}

// ---------------------------------------------------------------------------
// Brute-force optimality oracle.

namespace {

/// The rr_to_mpg product with every bot state merged into a single absorbing
/// sink. All bot states carry the same outgoing weight and are absorbing, so
/// the merge changes no reachable cycle mean.
struct OracleGraph {
  std::vector<std::vector<Vertex>> succ;
  std::vector<std::int64_t> weight;  // per source vertex
  std::vector<int> owner;
  std::vector<Vertex> starts;  // per original vertex
  Vertex sink;
  std::int64_t max_weight;
};

OracleGraph build_oracle_graph(const RRGame& game, const RRMeanPayoff& rm) {
  const std::size_t msize = rm.memory.num_states();
  const StateId bot = static_cast<StateId>(msize - 1);
  const std::size_t pn = rm.mpg.arena.num_vertices();

  OracleGraph og;
  // Map non-bot product vertices to compact ids; one extra sink at the end.
  std::vector<Vertex> map(pn, kNoVertex);
  Vertex count = 0;
  for (Vertex pv = 0; pv < pn; ++pv)
    if (pv % msize != bot) map[pv] = count++;
  og.sink = count;
  og.succ.resize(count + 1);
  og.weight.resize(count + 1);
  og.owner.resize(count + 1);
  og.max_weight = rm.max_weight;

  for (Vertex pv = 0; pv < pn; ++pv) {
    if (map[pv] == kNoVertex) continue;
    Vertex s = map[pv];
    og.weight[s] = rm.mpg.weights[pv].empty() ? 0 : rm.mpg.weights[pv][0];
    og.owner[s] = rm.mpg.arena.owner(pv);
    bool to_sink = false;
    for (Vertex u : rm.mpg.arena.successors(pv)) {
      if (map[u] == kNoVertex) {
        to_sink = true;
      } else {
        og.succ[s].push_back(map[u]);
      }
    }
    if (to_sink) og.succ[s].push_back(og.sink);
  }
  og.weight[og.sink] = rm.max_weight;
  og.owner[og.sink] = 1;
  og.succ[og.sink] = {og.sink};

  og.starts.resize(game.arena.num_vertices());
  for (Vertex v = 0; v < game.arena.num_vertices(); ++v) {
    Vertex pv = product_vertex(game.arena, rm.memory, v, rm.memory.init[v]);
    og.starts[v] = map[pv] == kNoVertex ? og.sink : map[pv];
  }
  return og;
}

class OracleEnumerator {
 public:
  OracleEnumerator(const OracleGraph& og, std::uint64_t budget)
      : og_(og),
        budget_(budget),
        chosen_(og.succ.size(), kNoVertex),
        mark_(og.succ.size(), 0),
        local_id_(og.succ.size(), kNoVertex) {}

  /// Minimum over enumerated strategies of the max reachable cycle mean.
  /// Enumerations run per start vertex: choices on vertices a strategy never
  /// reaches from the start cannot change its value there, so the classes
  /// enumerated this way cover all positional strategies. The budget applies
  /// to each per-start enumeration.
  std::vector<BigRat> run() {
    best_.assign(og_.starts.size(), std::nullopt);
    for (std::size_t i = 0; i < og_.starts.size(); ++i) {
      leaves_ = 0;
      explore(static_cast<Vertex>(i));
      max_leaves_ = std::max(max_leaves_, leaves_);
    }
    std::vector<BigRat> out(og_.starts.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = *best_[i];
    return out;
  }

  std::uint64_t max_leaves() const { return max_leaves_; }

 private:
  struct Scan {
    std::vector<Vertex> reach;   // visited vertices in discovery order
    bool sink = false;           // sink reachable
    Vertex frontier = kNoVertex; // lowest unassigned Player-0 vertex seen
  };

  Scan scan_from(Vertex source) {
    std::uint32_t stamp = ++stamp_counter_;
    Scan scan;
    std::vector<Vertex> stack{source};
    mark_[source] = stamp;
    while (!stack.empty()) {
      Vertex s = stack.back();
      stack.pop_back();
      scan.reach.push_back(s);
      if (s == og_.sink) {
        scan.sink = true;
        continue;
      }
      if (og_.owner[s] == 0 && chosen_[s] == kNoVertex) {
        if (scan.frontier == kNoVertex || s < scan.frontier) scan.frontier = s;
        continue;  // do not look past an unresolved choice
      }
      if (og_.owner[s] == 0) {
        Vertex u = chosen_[s];
        if (mark_[u] != stamp) {
          mark_[u] = stamp;
          stack.push_back(u);
        }
      } else {
        for (Vertex u : og_.succ[s]) {
          if (mark_[u] != stamp) {
            mark_[u] = stamp;
            stack.push_back(u);
          }
        }
      }
    }
    return scan;
  }

  void explore(Vertex origv) {
    Scan scan = scan_from(og_.starts[origv]);
    if (scan.sink) {
      // Absorbing, and no larger weight exists: every completion of this
      // partial strategy yields exactly the sink weight from this start.
      count_leaf();
      note_value(origv, BigRat(og_.max_weight));
      return;
    }
    // Cycles already closed by the partial assignment survive into every
    // completion, so the value from this start can only end up at or above
    // their best mean; at or above the minimum found so far the subtree
    // cannot improve it.
    std::optional<BigRat> closed = region_max_mean(scan.reach);
    const auto& best = best_[origv];
    if (closed && best && *closed >= *best) {
      count_leaf();
      return;
    }
    if (scan.frontier == kNoVertex) {
      count_leaf();
      if (!closed) throw std::logic_error("oracle subgraph without reachable cycle");
      note_value(origv, *closed);
      return;
    }
    Vertex frontier = scan.frontier;
    for (Vertex u : og_.succ[frontier]) {
      chosen_[frontier] = u;
      explore(origv);
    }
    chosen_[frontier] = kNoVertex;
  }

  /// Max mean cycle within the scanned region under the current partial
  /// assignment (unassigned vertices have no outgoing edges yet). Everything
  /// in the region is reachable from the scan's start.
  std::optional<BigRat> region_max_mean(const std::vector<Vertex>& reach) {
    for (std::size_t i = 0; i < reach.size(); ++i) local_id_[reach[i]] = static_cast<Vertex>(i);
    sub_.succ.clear();
    sub_.succ.resize(reach.size());
    for (Vertex s : reach) {
      Vertex ls = local_id_[s];
      if (og_.owner[s] == 0) {
        if (chosen_[s] != kNoVertex)
          sub_.succ[ls].push_back({local_id_[chosen_[s]], og_.weight[s]});
      } else {
        for (Vertex u : og_.succ[s]) sub_.succ[ls].push_back({local_id_[u], og_.weight[s]});
      }
    }
    std::optional<BigRat> out;
    for (auto& m : max_mean_per_vertex(sub_))
      if (m && (!out || *m > *out)) out = *m;
    return out;
  }

  void note_value(Vertex origv, const BigRat& val) {
    auto& b = best_[origv];
    if (!b || val < *b) b = val;
  }

  void count_leaf() {
    if (++leaves_ > budget_)
      throw BudgetExceededError("oracle enumeration exceeded the budget of " +
                                std::to_string(budget_) + " strategies");
  }

  const OracleGraph& og_;
  std::uint64_t budget_;
  std::uint64_t leaves_ = 0;
  std::uint64_t max_leaves_ = 0;
  std::vector<Vertex> chosen_;
  std::vector<std::optional<BigRat>> best_;
  std::uint32_t stamp_counter_ = 0;
  std::vector<std::uint32_t> mark_;
  std::vector<Vertex> local_id_;
  WeightedDigraph sub_;
};

}  // namespace

std::vector<Value> rr_oracle_optimal(const RRGame& game, const Thresholds& caps,
                                     std::uint64_t budget, std::size_t product_cap) {
  RRMeanPayoff rm = rr_to_mpg(game, caps, product_cap);
  OracleGraph og = build_oracle_graph(game, rm);
  OracleEnumerator enumerator(og, budget);
  std::vector<BigRat> mins = enumerator.run();

  std::vector<Value> out;
  out.reserve(mins.size());
  for (const BigRat& m : mins) {
    if (m == BigRat(og.max_weight)) {
      out.push_back(Value::infinity());
    } else {
      out.push_back(Value(m));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PlayoutStep> playout(const RRGame& game, const FiniteStateStrategy& sigma0,
                                 const Adversary& adversary, Vertex from,
                                 std::size_t steps) {
  if (sigma0.player != 0) throw SemanticError("playout expects a Player 0 strategy");
  require_compatible(game.arena, sigma0);
  if (from >= game.arena.num_vertices()) throw SemanticError("unknown start vertex");
  if (const auto* fss = std::get_if<FiniteStateStrategy>(&adversary)) {
    if (fss->player != 1) throw SemanticError("adversary strategy must be for Player 1");
    require_compatible(game.arena, *fss);
  }

  std::vector<PlayoutStep> out;
  if (steps == 0) return out;

  PlayPrefix prefix{from};
  WaitingVector t = waiting_step(WaitingVector::zero(game.k()), from, game);
  out.push_back({from, t, prefix_penalty(t, game.penalties)});

  StateId m0 = sigma0.memory.init[from];
  StateId m1 = 0;
  std::size_t script_pos = 0;
  if (const auto* fss = std::get_if<FiniteStateStrategy>(&adversary))
    m1 = fss->memory.init[from];

  Vertex current = from;
  const std::size_t n = game.arena.num_vertices();
  while (out.size() < steps) {
    Vertex next;
    if (game.arena.owner(current) == 0) {
      next = sigma0.next_move(current, m0);
    } else if (const auto* fss = std::get_if<FiniteStateStrategy>(&adversary)) {
      next = fss->next_move(current, m1);
    } else if (const auto* script = std::get_if<ScriptedAdversary>(&adversary)) {
      if (script_pos >= script->moves.size())
        throw SemanticError("adversary script exhausted after " +
                            std::to_string(script_pos) + " moves");
      next = script->moves[script_pos++];
      if (next >= n || !game.arena.has_edge(current, next))
        throw SemanticError("illegal scripted move from " + game.arena.name(current));
    } else {
      next = std::get<AdversaryCallback>(adversary)(prefix, current);
      if (next >= n || !game.arena.has_edge(current, next))
        throw SemanticError("illegal interactive move from " + game.arena.name(current));
    }
    m0 = sigma0.memory.update(m0, next, n);
    if (const auto* fss = std::get_if<FiniteStateStrategy>(&adversary))
      m1 = fss->memory.update(m1, next, n);
    t = waiting_step(t, next, game);
    prefix.push_back(next);
    out.push_back({next, t, prefix_penalty(t, game.penalties)});
    current = next;
  }
  return out;
}

}  // namespace rrsynth

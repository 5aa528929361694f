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

#include "rrsynth/meanpayoff.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace rrsynth {

namespace {

constexpr std::int64_t kMinf = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kTop = std::numeric_limits<std::int64_t>::max();

// ---------------------------------------------------------------------------
// Strongly connected components (iterative Tarjan). Components are numbered
// in completion order, which is reverse topological: every edge leaves a
// component with a larger id or stays inside.
struct SccResult {
  std::vector<std::uint32_t> comp;  // per vertex
  std::uint32_t count = 0;
};

SccResult tarjan_scc(const WeightedDigraph& g) {
  const std::size_t n = g.num_vertices();
  SccResult res;
  res.comp.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> index(n, 0), low(n, 0);
  std::vector<bool> on_stack(n, false), visited(n, false);
  std::vector<Vertex> stack;
  std::uint32_t next_index = 1;

  struct Frame {
    Vertex v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (Vertex root = 0; root < n; ++root) {
    if (visited[root]) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        visited[v] = true;
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (ei < g.succ[v].size()) {
        Vertex u = g.succ[v][ei++].to;
        if (!visited[u]) {
          call.push_back({u, 0});
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
      } else {
        if (low[v] == index[v]) {
          for (;;) {
            Vertex w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            res.comp[w] = res.count;
            if (w == v) break;
          }
          ++res.count;
        }
        Vertex child = v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Karp's maximum cycle mean inside one strongly connected subgraph, with
// rolling rows: two passes over walk lengths keep memory linear.
BigRat karp_scc(const WeightedDigraph& g, const std::vector<Vertex>& members) {
  const std::size_t m = members.size();
  std::vector<std::uint32_t> local(g.num_vertices(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::vector<WeightedDigraph::Edge>> adj(m);
  std::int64_t wmax = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : g.succ[members[i]]) {
      std::uint32_t j = local[e.to];
      if (j == std::numeric_limits<std::uint32_t>::max()) continue;
      adj[i].push_back({j, e.weight});
      wmax = std::max(wmax, std::abs(e.weight));
    }
  }
  if (wmax > 0 && static_cast<std::uint64_t>(m) >
                      (std::uint64_t{1} << 60) / static_cast<std::uint64_t>(wmax))
    throw SizeLimitError("cycle-mean path sums would overflow");

  auto advance = [&](const std::vector<std::int64_t>& cur, std::vector<std::int64_t>& next) {
    std::fill(next.begin(), next.end(), kMinf);
    for (std::size_t i = 0; i < m; ++i) {
      if (cur[i] == kMinf) continue;
      for (const auto& e : adj[i]) next[e.to] = std::max(next[e.to], cur[i] + e.weight);
    }
  };

  std::vector<std::int64_t> cur(m, kMinf), next(m, kMinf);
  cur[0] = 0;
  for (std::size_t l = 0; l < m; ++l) {
    advance(cur, next);
    std::swap(cur, next);
  }
  std::vector<std::int64_t> d_m = cur;

  // min over l of (D_m(v) - D_l(v)) / (m - l), tracked as exact fractions
  std::vector<std::pair<std::int64_t, std::int64_t>> best(m, {0, 0});  // den 0 = none
  cur.assign(m, kMinf);
  cur[0] = 0;
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t v = 0; v < m; ++v) {
      if (cur[v] == kMinf || d_m[v] == kMinf) continue;
      std::int64_t num = d_m[v] - cur[v];
      std::int64_t den = static_cast<std::int64_t>(m - l);
      auto& b = best[v];
      if (b.second == 0 || static_cast<__int128>(num) * b.second <
                               static_cast<__int128>(b.first) * den)
        b = {num, den};
    }
    advance(cur, next);
    std::swap(cur, next);
  }

  bool have = false;
  std::pair<std::int64_t, std::int64_t> lambda{0, 0};
  for (std::size_t v = 0; v < m; ++v) {
    if (d_m[v] == kMinf || best[v].second == 0) continue;
    if (!have || static_cast<__int128>(best[v].first) * lambda.second >
                     static_cast<__int128>(lambda.first) * best[v].second) {
      lambda = best[v];
      have = true;
    }
  }
  assert(have);
  return BigRat(BigInt(lambda.first), BigInt(lambda.second));
}

std::vector<std::optional<BigRat>> mean_per_vertex_impl(const WeightedDigraph& g) {
  const std::size_t n = g.num_vertices();
  SccResult scc = tarjan_scc(g);

  std::vector<std::vector<Vertex>> members(scc.count);
  for (Vertex v = 0; v < n; ++v) members[scc.comp[v]].push_back(v);

  std::vector<std::optional<BigRat>> comp_val(scc.count);
  // Components in id order: edges only lead to smaller ids, so values of
  // successors are ready when a component is processed.
  for (std::uint32_t c = 0; c < scc.count; ++c) {
    bool has_internal_edge = false;
    for (Vertex v : members[c]) {
      for (const auto& e : g.succ[v]) {
        if (scc.comp[e.to] == c) has_internal_edge = true;
      }
    }
    std::optional<BigRat> val;
    if (has_internal_edge) val = karp_scc(g, members[c]);
    for (Vertex v : members[c]) {
      for (const auto& e : g.succ[v]) {
        std::uint32_t c2 = scc.comp[e.to];
        if (c2 == c) continue;
        if (comp_val[c2] && (!val || *comp_val[c2] > *val)) val = comp_val[c2];
      }
    }
    comp_val[c] = val;
  }

  std::vector<std::optional<BigRat>> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = comp_val[scc.comp[v]];
  return out;
}

}  // namespace

std::vector<std::optional<BigRat>> max_mean_per_vertex(const WeightedDigraph& g) {
  return mean_per_vertex_impl(g);
}

std::vector<std::optional<BigRat>> min_mean_per_vertex(const WeightedDigraph& g) {
  WeightedDigraph neg = g;
  for (auto& row : neg.succ)
    for (auto& e : row) e.weight = -e.weight;
  auto vals = mean_per_vertex_impl(neg);
  for (auto& v : vals)
    if (v) *v = -*v;
  return vals;
}

std::optional<BigRat> karp_max_mean(const WeightedDigraph& g, Vertex source) {
  // Restrict to the part reachable from the source, then take the best
  // component mean there.
  const std::size_t n = g.num_vertices();
  std::vector<bool> reach(n, false);
  std::vector<Vertex> stack{source};
  reach[source] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& e : g.succ[v]) {
      if (!reach[e.to]) {
        reach[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  WeightedDigraph sub;
  std::vector<Vertex> map(n, kNoVertex);
  Vertex count = 0;
  for (Vertex v = 0; v < n; ++v)
    if (reach[v]) map[v] = count++;
  sub.succ.resize(count);
  for (Vertex v = 0; v < n; ++v) {
    if (!reach[v]) continue;
    for (const auto& e : g.succ[v])
      if (reach[e.to]) sub.succ[map[v]].push_back({map[e.to], e.weight});
  }
  auto vals = mean_per_vertex_impl(sub);
  return vals[map[source]];
}

MeanPayoffGame make_mpg(Arena arena, std::vector<std::vector<std::int64_t>> weights) {
  if (weights.size() != arena.num_vertices())
    throw SemanticError("need one weight row per vertex");
  std::int64_t wmax = 0;
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    if (weights[v].size() != arena.successors(v).size())
      throw SemanticError("need one weight per edge");
    for (std::int64_t w : weights[v]) wmax = std::max(wmax, std::abs(w));
  }
  return MeanPayoffGame{std::move(arena), std::move(weights), wmax};
}

WeightedDigraph to_digraph(const MeanPayoffGame& g) {
  WeightedDigraph dg;
  dg.succ.resize(g.arena.num_vertices());
  for (Vertex v = 0; v < g.arena.num_vertices(); ++v) {
    const auto& succ = g.arena.successors(v);
    for (std::size_t i = 0; i < succ.size(); ++i)
      dg.succ[v].push_back({succ[i], g.weights[v][i]});
  }
  return dg;
}

WeightedDigraph restrict_player(const MeanPayoffGame& g, int player,
                                const std::vector<Vertex>& moves) {
  WeightedDigraph dg;
  dg.succ.resize(g.arena.num_vertices());
  for (Vertex v = 0; v < g.arena.num_vertices(); ++v) {
    const auto& succ = g.arena.successors(v);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (g.arena.owner(v) == player && succ[i] != moves[v]) continue;
      dg.succ[v].push_back({succ[i], g.weights[v][i]});
    }
    if (dg.succ[v].empty())
      throw SemanticError("restriction drops all edges of vertex " + g.arena.name(v));
  }
  return dg;
}

// ---------------------------------------------------------------------------
// Energy-game engine: progress-measure lifting deciding threshold queries
// "can `maximizer` keep the partial sums of mulw*w + addw bounded below".

namespace {

struct EnergyMeasure {
  std::vector<std::int64_t> mu;  // kTop = loses the energy objective
};

EnergyMeasure energy_solve(const MeanPayoffGame& g, int maximizer, std::int64_t mulw,
                           std::int64_t addw) {
  const std::size_t n = g.arena.num_vertices();

  BigInt wbound = BigInt(std::abs(mulw)) * g.max_abs_weight + std::abs(addw);
  BigInt mg_big = BigInt(n) * wbound + 1;
  if (mg_big > (BigInt(1) << 61))
    throw SizeLimitError("energy measures would overflow the machine-word range");
  const std::int64_t mg = static_cast<std::int64_t>(mg_big);

  auto edge_weight = [&](Vertex v, std::size_t i) {
    return mulw * g.weights[v][i] + addw;
  };

  EnergyMeasure res;
  res.mu.assign(n, 0);
  auto lift_target = [&](Vertex v) -> std::int64_t {
    const auto& succ = g.arena.successors(v);
    bool is_max = g.arena.owner(v) == maximizer;
    std::int64_t best = is_max ? kTop : 0;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      std::int64_t m = res.mu[succ[i]];
      std::int64_t cand;
      if (m == kTop) {
        cand = kTop;
      } else {
        cand = std::max<std::int64_t>(0, m - edge_weight(v, i));
        if (cand > mg) cand = kTop;
      }
      if (is_max) {
        best = std::min(best, cand);
      } else {
        best = std::max(best, cand);
      }
    }
    return best;
  };

  std::deque<Vertex> queue;
  std::vector<bool> queued(n, true);
  for (Vertex v = 0; v < n; ++v) queue.push_back(v);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    queued[v] = false;
    std::int64_t target = lift_target(v);
    if (target <= res.mu[v]) continue;
    res.mu[v] = target;
    for (Vertex u : g.arena.predecessors(v)) {
      if (!queued[u]) {
        queued[u] = true;
        queue.push_back(u);
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Exact rational helpers on the Farey grid of denominators <= n.

void exgcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return;
  }
  BigInt x1, y1;
  exgcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Least rational strictly greater than t with denominator at most n.
BigRat farey_succ(const BigRat& t, const BigInt& n) {
  BigInt a = boost::multiprecision::numerator(t);
  BigInt b = boost::multiprecision::denominator(t);
  BigInt q = floor_div(a, b);
  BigInt r = a - q * b;  // 0 <= r < b
  if (b == 1) return BigRat(q * n + 1, n);
  if (b > n) throw std::logic_error("farey_succ: denominator exceeds the grid");
  // c*b - r*d = 1 with maximal d <= n
  BigInt x, y;
  exgcd(r, b, x, y);  // r*x + b*y = 1
  BigInt d0 = ((-x) % b + b) % b;
  BigInt d = d0 + floor_div(n - d0, b) * b;
  BigInt c = (1 + r * d) / b;
  return BigRat(q * d + c, d);
}

BigRat farey_pred(const BigRat& t, const BigInt& n) { return -farey_succ(-t, n); }

BigRat rat_floor(const BigRat& t) {
  return BigRat(floor_div(boost::multiprecision::numerator(t),
                          boost::multiprecision::denominator(t)));
}

/// Simplest rational (minimal denominator, then minimal |numerator|) in the
/// closed interval [lo, hi].
BigRat simplest_between(const BigRat& lo, const BigRat& hi) {
  if (lo == hi) return lo;
  if (lo > hi) throw std::logic_error("simplest_between: empty interval");
  if (lo <= 0 && 0 <= hi) return BigRat(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  BigRat fl = rat_floor(lo);
  BigRat ceil_lo = (fl == lo) ? lo : fl + 1;  // smallest integer >= lo
  if (ceil_lo <= hi) return ceil_lo;
  // both strictly inside (fl, fl+1)
  return fl + BigRat(1) / simplest_between(BigRat(1) / (hi - fl), BigRat(1) / (lo - fl));
}

}  // namespace

namespace detail {

struct ThresholdEngine {
  const MeanPayoffGame& g;
  std::map<BigRat, EnergyMeasure> geq_cache, leq_cache;

  explicit ThresholdEngine(const MeanPayoffGame& game) : g(game) {}

  static std::int64_t to_i64(const BigInt& x) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min())
      throw SizeLimitError("threshold out of machine-word range");
    return static_cast<std::int64_t>(x);
  }

  const EnergyMeasure& geq(const BigRat& t) {
    auto it = geq_cache.find(t);
    if (it != geq_cache.end()) return it->second;
    std::int64_t b = to_i64(boost::multiprecision::denominator(t));
    std::int64_t a = to_i64(boost::multiprecision::numerator(t));
    return geq_cache.emplace(t, energy_solve(g, 1, b, -a)).first->second;
  }
  const EnergyMeasure& leq(const BigRat& t) {
    auto it = leq_cache.find(t);
    if (it != leq_cache.end()) return it->second;
    std::int64_t b = to_i64(boost::multiprecision::denominator(t));
    std::int64_t a = to_i64(boost::multiprecision::numerator(t));
    return leq_cache.emplace(t, energy_solve(g, 0, -b, a)).first->second;
  }

  /// Exact value of every vertex by interval refinement over the Farey grid
  /// of denominators <= |V|.
  std::vector<BigRat> values() {
    const std::size_t n = g.arena.num_vertices();
    const BigInt den_bound = n;
    const std::int64_t w = g.max_abs_weight;
    std::vector<BigRat> lo(n, BigRat(-w)), hi(n, BigRat(w));
    std::vector<bool> resolved(n, false);
    std::vector<BigRat> value(n, BigRat(0));

    for (;;) {
      Vertex pick = kNoVertex;
      for (Vertex v = 0; v < n; ++v) {
        if (resolved[v]) continue;
        if (lo[v] == hi[v]) {
          value[v] = lo[v];
          resolved[v] = true;
          continue;
        }
        pick = v;
        break;
      }
      if (pick == kNoVertex) break;

      BigRat t = simplest_between(lo[pick], hi[pick]);
      const auto& ge = geq(t);
      const auto& le = leq(t);
      for (Vertex v = 0; v < n; ++v) {
        if (resolved[v]) continue;
        bool is_ge = ge.mu[v] != kTop;
        bool is_le = le.mu[v] != kTop;
        if (is_ge && is_le) {
          value[v] = t;
          resolved[v] = true;
        } else if (is_ge) {
          BigRat next = farey_succ(t, den_bound);
          if (next > lo[v]) lo[v] = next;
        } else if (is_le) {
          BigRat prev = farey_pred(t, den_bound);
          if (prev < hi[v]) hi[v] = prev;
        } else {
          throw std::logic_error("threshold query inconsistent");
        }
        if (!resolved[v] && lo[v] > hi[v])
          throw std::logic_error("value interval became empty");
      }
    }
    return value;
  }
};

}  // namespace detail

namespace {

/// Moves for the player owning `maximizer`-side vertices, read off a
/// stabilized energy measure: the lowest-index successor attaining the lift.
Vertex measure_move(const MeanPayoffGame& g, const EnergyMeasure& em, Vertex v,
                    std::int64_t mulw, std::int64_t addw) {
  const auto& succ = g.arena.successors(v);
  std::int64_t best = kTop;
  Vertex arg = kNoVertex;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    std::int64_t m = em.mu[succ[i]];
    std::int64_t cand = m == kTop
                            ? kTop
                            : std::max<std::int64_t>(0, m - (mulw * g.weights[v][i] + addw));
    if (cand < best) {
      best = cand;
      arg = succ[i];
    }
  }
  return arg;
}

bool verify_solution(const MeanPayoffGame& g, const MPGSolution& sol) {
  auto mm0 = max_mean_per_vertex(restrict_player(g, 0, sol.strategy_0));
  auto mm1 = min_mean_per_vertex(restrict_player(g, 1, sol.strategy_1));
  for (Vertex v = 0; v < g.arena.num_vertices(); ++v) {
    if (!mm0[v] || *mm0[v] != sol.value[v]) return false;
    if (!mm1[v] || *mm1[v] != sol.value[v]) return false;
  }
  return true;
}

MeanPayoffGame restrict_to_single_edge(const MeanPayoffGame& g, Vertex v, Vertex target) {
  RawArena raw;
  for (Vertex u = 0; u < g.arena.num_vertices(); ++u)
    raw.vertices.emplace_back(g.arena.name(u), g.arena.owner(u));
  std::vector<std::vector<std::int64_t>> weights(g.arena.num_vertices());
  for (Vertex u = 0; u < g.arena.num_vertices(); ++u) {
    const auto& succ = g.arena.successors(u);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (u == v && succ[i] != target) continue;
      raw.edges.emplace_back(g.arena.name(u), g.arena.name(succ[i]));
      weights[u].push_back(g.weights[u][i]);
    }
  }
  return make_mpg(validate_arena(raw), std::move(weights));
}

/// Slow but safe strategy recovery: fix one edge at a time, keeping it only
/// when a fresh value computation shows all values unchanged.
std::vector<Vertex> strategy_by_edge_fixing(const MeanPayoffGame& g, int player,
                                            const std::vector<BigRat>& value) {
  const std::size_t n = g.arena.num_vertices();
  std::vector<Vertex> moves(n, kNoVertex);
  MeanPayoffGame work = g;
  for (Vertex v = 0; v < n; ++v) {
    if (g.arena.owner(v) != player) continue;
    bool fixed = false;
    for (Vertex u : work.arena.successors(v)) {
      MeanPayoffGame candidate = restrict_to_single_edge(work, v, u);
      detail::ThresholdEngine engine(candidate);
      if (engine.values() == value) {
        moves[v] = u;
        work = std::move(candidate);
        fixed = true;
        break;
      }
    }
    if (!fixed) throw std::logic_error("edge fixing found no optimal move");
  }
  return moves;
}

}  // namespace

MPGSolution solve_mpg(const MeanPayoffGame& g) {
  const std::size_t n = g.arena.num_vertices();
  detail::ThresholdEngine engine(g);

  MPGSolution sol;
  sol.value = engine.values();
  sol.strategy_0.assign(n, kNoVertex);
  sol.strategy_1.assign(n, kNoVertex);

  for (Vertex v = 0; v < n; ++v) {
    const BigRat& t = sol.value[v];
    std::int64_t b = detail::ThresholdEngine::to_i64(boost::multiprecision::denominator(t));
    std::int64_t a = detail::ThresholdEngine::to_i64(boost::multiprecision::numerator(t));
    if (g.arena.owner(v) == 1) {
      sol.strategy_1[v] = measure_move(g, engine.geq(t), v, b, -a);
    } else {
      sol.strategy_0[v] = measure_move(g, engine.leq(t), v, -b, a);
    }
  }

  if (!verify_solution(g, sol)) {
    sol.strategy_0 = strategy_by_edge_fixing(g, 0, sol.value);
    sol.strategy_1 = strategy_by_edge_fixing(g, 1, sol.value);
    if (!verify_solution(g, sol))
      throw std::logic_error("mean-payoff strategy extraction failed verification");
  }
  return sol;
}

std::vector<BigRat> mpg_oracle(const MeanPayoffGame& g, std::uint64_t budget) {
  const std::size_t n = g.arena.num_vertices();
  std::vector<Vertex> p0;
  BigNat count = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (g.arena.owner(v) == 0) {
      p0.push_back(v);
      count *= g.arena.successors(v).size();
    }
  }
  if (count > budget)
    throw BudgetExceededError("Player 0 has " + abbreviate(count) +
                              " positional strategies, more than the budget of " +
                              std::to_string(budget));

  std::vector<std::size_t> choice(p0.size(), 0);
  std::vector<Vertex> moves(n, kNoVertex);
  std::vector<std::optional<BigRat>> best(n);
  for (;;) {
    for (std::size_t i = 0; i < p0.size(); ++i)
      moves[p0[i]] = g.arena.successors(p0[i])[choice[i]];
    auto mm = max_mean_per_vertex(restrict_player(g, 0, moves));
    for (Vertex v = 0; v < n; ++v) {
      if (!mm[v]) throw std::logic_error("dead-end-free arena without reachable cycle");
      if (!best[v] || *mm[v] < *best[v]) best[v] = *mm[v];
    }
    std::size_t i = 0;
    for (; i < p0.size(); ++i) {
      if (++choice[i] < g.arena.successors(p0[i]).size()) break;
      choice[i] = 0;
    }
    if (i == p0.size()) break;
  }

  std::vector<BigRat> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = *best[v];
  return out;
}

}  // namespace rrsynth

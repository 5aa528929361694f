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

#include "rrsynth/arena.hpp"

#include <algorithm>

namespace rrsynth {

bool Arena::has_edge(Vertex u, Vertex v) const {
  const auto& s = succ_[u];
  return std::binary_search(s.begin(), s.end(), v);
}

Vertex Arena::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? kNoVertex : it->second;
}

Vertex Arena::vertex(const std::string& name) const {
  Vertex v = find(name);
  if (v == kNoVertex) throw SemanticError("unknown vertex '" + name + "'");
  return v;
}

void Arena::finalize() {
  num_edges_ = 0;
  pred_.assign(names_.size(), {});
  for (Vertex u = 0; u < succ_.size(); ++u) {
    auto& s = succ_[u];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    num_edges_ += s.size();
    for (Vertex v : s) pred_[v].push_back(u);
  }
  for (auto& p : pred_) std::sort(p.begin(), p.end());
}

Arena validate_arena(const RawArena& raw) {
  Arena a;
  for (const auto& [name, owner] : raw.vertices) {
    if (a.index_.count(name))
      throw SemanticError("duplicate vertex '" + name + "'");
    if (owner != 0 && owner != 1)
      throw SemanticError("vertex '" + name + "' has owner " +
                          std::to_string(owner) + ", expected 0 or 1");
    a.index_[name] = static_cast<Vertex>(a.names_.size());
    a.names_.push_back(name);
    a.owners_.push_back(owner);
  }
  a.succ_.assign(a.names_.size(), {});
  for (const auto& [from, to] : raw.edges) {
    Vertex u = a.find(from);
    Vertex v = a.find(to);
    if (u == kNoVertex || v == kNoVertex)
      throw SemanticError("dangling edge (" + from + ", " + to + ")");
    a.succ_[u].push_back(v);
  }
  a.finalize();
  for (Vertex v = 0; v < a.names_.size(); ++v)
    if (a.succ_[v].empty())
      throw SemanticError("dead-end vertex '" + a.names_[v] +
                          "': every vertex needs an outgoing edge");
  return a;
}

ArenaBuilder& ArenaBuilder::vertex(const std::string& name, int owner) {
  raw_.vertices.emplace_back(name, owner);
  return *this;
}

ArenaBuilder& ArenaBuilder::edge(const std::string& from, const std::string& to) {
  raw_.edges.emplace_back(from, to);
  return *this;
}

Arena ArenaBuilder::build() const { return validate_arena(raw_); }

bool is_play_prefix(const Arena& arena, const PlayPrefix& w) {
  for (Vertex v : w)
    if (v >= arena.num_vertices()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!arena.has_edge(w[i], w[i + 1])) return false;
  return true;
}

void require_play_prefix(const Arena& arena, const PlayPrefix& w) {
  if (!is_play_prefix(arena, w))
    throw SemanticError("invalid play prefix: consecutive vertices must be joined by edges");
}

bool is_lasso(const Arena& arena, const LassoPlay& lasso) {
  if (lasso.cycle.empty()) return false;
  PlayPrefix whole = lasso.prefix;
  whole.insert(whole.end(), lasso.cycle.begin(), lasso.cycle.end());
  if (!is_play_prefix(arena, whole)) return false;
  return arena.has_edge(lasso.cycle.back(), lasso.cycle.front());
}

void require_lasso(const Arena& arena, const LassoPlay& lasso) {
  if (!is_lasso(arena, lasso))
    throw SemanticError("invalid lasso: cycle must be nonempty, prefix+cycle a play "
                        "prefix, and the cycle must close");
}

StateId MemoryStructure::run(const PlayPrefix& w, std::size_t num_vertices) const {
  StateId m = init[w.front()];
  for (std::size_t i = 1; i < w.size(); ++i) m = update(m, w[i], num_vertices);
  return m;
}

void require_compatible(const Arena& arena, const FiniteStateStrategy& sigma) {
  std::size_t n = arena.num_vertices();
  std::size_t m = sigma.memory.num_states();
  if (sigma.memory.init.size() != n || sigma.memory.update_table.size() != m * n ||
      sigma.next_move_table.size() != n * m)
    throw SemanticError("strategy tables are not total over the arena");
  for (StateId s = 0; s < m; ++s)
    for (Vertex v = 0; v < n; ++v)
      if (sigma.memory.update(s, v, n) >= m)
        throw SemanticError("strategy memory update leaves the state set");
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != sigma.player) continue;
    for (StateId s = 0; s < m; ++s) {
      Vertex t = sigma.next_move(v, s);
      if (t >= n || !arena.has_edge(v, t))
        throw SemanticError("strategy move " + arena.name(v) + " -> " +
                            (t < n ? arena.name(t) : std::string("?")) +
                            " does not follow an edge");
    }
  }
}

Arena product(const Arena& arena, const MemoryStructure& mem, std::size_t cap) {
  std::size_t n = arena.num_vertices();
  std::size_t m = mem.num_states();
  if (n * m > cap)
    throw SizeLimitError("product would have " + std::to_string(n * m) +
                         " vertices, exceeding the cap of " + std::to_string(cap));
  Arena out;
  out.names_.reserve(n * m);
  out.owners_.reserve(n * m);
  out.succ_.resize(n * m);
  for (Vertex v = 0; v < n; ++v) {
    for (StateId s = 0; s < m; ++s) {
      out.names_.push_back(arena.name(v) + "@" + std::to_string(s));
      out.owners_.push_back(arena.owner(v));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    for (StateId s = 0; s < m; ++s) {
      auto& row = out.succ_[static_cast<std::size_t>(v) * m + s];
      for (Vertex u : arena.successors(v)) {
        StateId s2 = mem.update(s, u, n);
        row.push_back(static_cast<Vertex>(static_cast<std::size_t>(u) * m + s2));
      }
    }
  }
  for (std::size_t i = 0; i < out.names_.size(); ++i)
    out.index_[out.names_[i]] = static_cast<Vertex>(i);
  out.finalize();
  return out;
}

std::vector<std::pair<Vertex, StateId>> extend_prefix(const Arena& arena,
                                                      const MemoryStructure& mem,
                                                      const PlayPrefix& w) {
  if (w.empty()) throw SemanticError("invalid prefix: empty");
  require_play_prefix(arena, w);
  std::vector<std::pair<Vertex, StateId>> out;
  out.reserve(w.size());
  StateId m = mem.init[w.front()];
  out.emplace_back(w.front(), m);
  for (std::size_t i = 1; i < w.size(); ++i) {
    m = mem.update(m, w[i], arena.num_vertices());
    out.emplace_back(w[i], m);
  }
  return out;
}

}  // namespace rrsynth

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

#ifndef RRSYNTH_ARENA_HPP
#define RRSYNTH_ARENA_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rrsynth/errors.hpp"

namespace rrsynth {

using Vertex = std::uint32_t;
using StateId = std::uint32_t;

constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct MemoryStructure;

/// Unvalidated arena description, as read from a file or built by hand.
struct RawArena {
  std::vector<std::pair<std::string, int>> vertices;  // (name, owner 0|1)
  std::vector<std::pair<std::string, std::string>> edges;
};

/// A finite game graph with an ownership partition. Vertices are referenced
/// by dense index in declaration order; names are kept for I/O only. Every
/// vertex has at least one outgoing edge. Immutable after construction.
class Arena {
 public:
  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  const std::string& name(Vertex v) const { return names_[v]; }
  int owner(Vertex v) const { return owners_[v]; }
  const std::vector<Vertex>& successors(Vertex v) const { return succ_[v]; }
  const std::vector<Vertex>& predecessors(Vertex v) const { return pred_[v]; }

  bool has_edge(Vertex u, Vertex v) const;
  /// Index of a named vertex, or kNoVertex.
  Vertex find(const std::string& name) const;
  /// Like find(), but throws SemanticError for unknown names.
  Vertex vertex(const std::string& name) const;

  friend Arena validate_arena(const RawArena& raw);
  friend Arena product(const Arena& arena, const MemoryStructure& mem, std::size_t cap);
  friend class ArenaBuilder;

 private:
  Arena() = default;
  void finalize();  // sorts adjacency, builds predecessors and name index

  std::vector<std::string> names_;
  std::vector<int> owners_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::vector<Vertex>> pred_;
  std::map<std::string, Vertex> index_;
  std::size_t num_edges_ = 0;
};

/// Checks well-formedness: unique names, edge endpoints exist, no dead ends.
/// Throws SemanticError ("duplicate vertex ...", "dangling edge ...",
/// "dead-end vertex ...") on violation.
Arena validate_arena(const RawArena& raw);

/// Convenience for constructing arenas in code and tests.
class ArenaBuilder {
 public:
  ArenaBuilder& vertex(const std::string& name, int owner);
  ArenaBuilder& edge(const std::string& from, const std::string& to);
  Arena build() const;

 private:
  RawArena raw_;
};

/// A finite walk through an arena: consecutive vertices joined by edges.
using PlayPrefix = std::vector<Vertex>;

bool is_play_prefix(const Arena& arena, const PlayPrefix& w);
void require_play_prefix(const Arena& arena, const PlayPrefix& w);

/// Finite representation of an ultimately periodic play: prefix followed by
/// a cycle repeated forever. The cycle must be nonempty, prefix+cycle must be
/// a valid play prefix, and the cycle must close (last(cycle) -> first(cycle)).
struct LassoPlay {
  PlayPrefix prefix;  // may be empty
  PlayPrefix cycle;   // nonempty
};

bool is_lasso(const Arena& arena, const LassoPlay& lasso);
void require_lasso(const Arena& arena, const LassoPlay& lasso);

/// A deterministic finite automaton reading vertices: memory states, an
/// initialization per start vertex, and a transition on every (state, vertex)
/// pair. Drives finite-state strategies and product arenas.
struct MemoryStructure {
  std::vector<std::string> state_names;  // |M| entries, construction order
  std::vector<StateId> init;             // per arena vertex
  std::vector<StateId> update_table;     // |M| x |V|, row-major by state

  std::size_t num_states() const { return state_names.size(); }
  StateId update(StateId m, Vertex v, std::size_t num_vertices) const {
    return update_table[static_cast<std::size_t>(m) * num_vertices + v];
  }
  /// update* over a nonempty prefix.
  StateId run(const PlayPrefix& w, std::size_t num_vertices) const;
};

/// A Mealy-style controller for one player: a memory structure plus a
/// next-move function on (own vertex, state). Moves must follow arena edges.
struct FiniteStateStrategy {
  MemoryStructure memory;
  int player = 0;
  /// |V| x |M| row-major by vertex; meaningful only for vertices of `player`.
  std::vector<Vertex> next_move_table;

  Vertex next_move(Vertex v, StateId m) const {
    return next_move_table[static_cast<std::size_t>(v) * memory.num_states() + m];
  }
  void set_next_move(Vertex v, StateId m, Vertex target) {
    next_move_table[static_cast<std::size_t>(v) * memory.num_states() + m] = target;
  }
};

/// Checks that the strategy's tables are total over the arena and that every
/// next-move follows an edge.
void require_compatible(const Arena& arena, const FiniteStateStrategy& sigma);

/// Hard cap on |V| * |M| when materializing products; the theoretical
/// thresholds can be astronomically large, so we fail fast instead.
inline constexpr std::size_t kDefaultProductCap = 10'000'000;

/// The expanded arena A x M: vertices (v, m) named "v@m", owners inherited
/// from the first component, edges ((v,m),(v',m')) iff (v,v') in E and
/// update(m, v') = m'. Throws SizeLimitError if |V| * |M| exceeds `cap`.
Arena product(const Arena& arena, const MemoryStructure& mem,
              std::size_t cap = kDefaultProductCap);

/// Product vertex index of (v, m) under the construction order used by
/// product(): index = v * |M| + m.
inline Vertex product_vertex(const Arena& arena, const MemoryStructure& mem,
                             Vertex v, StateId m) {
  (void)arena;
  return static_cast<Vertex>(static_cast<std::size_t>(v) * mem.num_states() + m);
}

/// The unique extension of a play prefix with memory states:
/// m0 = init(w0), m_{n+1} = update(m_n, w_{n+1}). Projecting the result back
/// to vertices yields w again.
std::vector<std::pair<Vertex, StateId>> extend_prefix(const Arena& arena,
                                                      const MemoryStructure& mem,
                                                      const PlayPrefix& w);

}  // namespace rrsynth

#endif  // RRSYNTH_ARENA_HPP

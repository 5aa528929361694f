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

#include "rrsynth/io.hpp"

#include <sstream>

namespace rrsynth {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit_vertices(std::ostringstream& os, const Arena& arena,
                   const std::vector<std::string>& extra_label) {
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    os << "  " << quoted(arena.name(v)) << " [shape="
       << (arena.owner(v) == 0 ? "circle" : "box");
    if (!extra_label.empty() && !extra_label[v].empty())
      os << ", label=" << quoted(arena.name(v) + "\\n" + extra_label[v]);
    os << "];\n";
  }
}

}  // namespace

std::string export_dot(const Arena& arena) {
  std::ostringstream os;
  os << "digraph G {\n";
  emit_vertices(os, arena, {});
  for (Vertex v = 0; v < arena.num_vertices(); ++v)
    for (Vertex u : arena.successors(v))
      os << "  " << quoted(arena.name(v)) << " -> " << quoted(arena.name(u)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const RRGame& game) {
  const Arena& arena = game.arena;
  std::vector<std::string> labels(arena.num_vertices());
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    std::string l;
    for (std::size_t j = 0; j < game.k(); ++j) {
      if (game.in_request(j, v)) l += (l.empty() ? "" : ",") + ("Q" + std::to_string(j + 1));
      if (game.in_response(j, v)) l += (l.empty() ? "" : ",") + ("P" + std::to_string(j + 1));
    }
    labels[v] = l;
  }
  std::ostringstream os;
  os << "digraph G {\n";
  emit_vertices(os, arena, labels);
  for (Vertex v = 0; v < arena.num_vertices(); ++v)
    for (Vertex u : arena.successors(v))
      os << "  " << quoted(arena.name(v)) << " -> " << quoted(arena.name(u)) << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const MeanPayoffGame& game) {
  const Arena& arena = game.arena;
  std::ostringstream os;
  os << "digraph G {\n";
  emit_vertices(os, arena, {});
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    const auto& succ = arena.successors(v);
    for (std::size_t i = 0; i < succ.size(); ++i)
      os << "  " << quoted(arena.name(v)) << " -> " << quoted(arena.name(succ[i]))
         << " [label=\"" << game.weights[v][i] << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rrsynth

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

#include <json.hpp>

#include <map>

namespace rrsynth {

using ordered_json = nlohmann::ordered_json;

std::string serialize_strategy(const Arena& arena, const FiniteStateStrategy& sigma) {
  const std::size_t n = arena.num_vertices();
  const std::size_t msize = sigma.memory.num_states();

  ordered_json doc;
  doc["player"] = sigma.player;
  ordered_json memory;
  memory["states"] = sigma.memory.state_names;
  ordered_json init;
  for (Vertex v = 0; v < n; ++v)
    init[arena.name(v)] = sigma.memory.state_names[sigma.memory.init[v]];
  memory["init"] = std::move(init);
  ordered_json update;
  for (StateId m = 0; m < msize; ++m) {
    ordered_json row;
    for (Vertex v = 0; v < n; ++v)
      row[arena.name(v)] = sigma.memory.state_names[sigma.memory.update(m, v, n)];
    update[sigma.memory.state_names[m]] = std::move(row);
  }
  memory["update"] = std::move(update);
  doc["memory"] = std::move(memory);

  ordered_json moves;
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != sigma.player) continue;
    ordered_json row;
    for (StateId m = 0; m < msize; ++m) {
      Vertex t = sigma.next_move(v, m);
      row[sigma.memory.state_names[m]] = t == kNoVertex ? "" : arena.name(t);
    }
    moves[arena.name(v)] = std::move(row);
  }
  doc["next_move"] = std::move(moves);
  return doc.dump(2) + "\n";
}

FiniteStateStrategy parse_strategy(const Arena& arena, const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("strategy file is not valid JSON: ") + e.what());
  }
  try {
    FiniteStateStrategy fss;
    fss.player = doc.at("player").get<int>();
    if (fss.player != 0 && fss.player != 1)
      throw ParseError("player must be 0 or 1");

    const auto& memory = doc.at("memory");
    fss.memory.state_names = memory.at("states").get<std::vector<std::string>>();
    if (fss.memory.state_names.empty()) throw ParseError("empty memory state list");
    std::map<std::string, StateId> state_index;
    for (StateId m = 0; m < fss.memory.state_names.size(); ++m) {
      if (!state_index.emplace(fss.memory.state_names[m], m).second)
        throw ParseError("duplicate memory state '" + fss.memory.state_names[m] + "'");
    }
    auto state_of = [&](const std::string& name) {
      auto it = state_index.find(name);
      if (it == state_index.end()) throw ParseError("unknown memory state '" + name + "'");
      return it->second;
    };

    const std::size_t n = arena.num_vertices();
    const std::size_t msize = fss.memory.state_names.size();
    fss.memory.init.assign(n, 0);
    for (Vertex v = 0; v < n; ++v)
      fss.memory.init[v] = state_of(doc.at("memory").at("init").at(arena.name(v)));
    fss.memory.update_table.assign(msize * n, 0);
    for (StateId m = 0; m < msize; ++m) {
      const auto& row = memory.at("update").at(fss.memory.state_names[m]);
      for (Vertex v = 0; v < n; ++v)
        fss.memory.update_table[static_cast<std::size_t>(m) * n + v] =
            state_of(row.at(arena.name(v)));
    }

    fss.next_move_table.assign(n * msize, kNoVertex);
    const auto& moves = doc.at("next_move");
    for (Vertex v = 0; v < n; ++v) {
      if (arena.owner(v) != fss.player) continue;
      const auto& row = moves.at(arena.name(v));
      for (StateId m = 0; m < msize; ++m) {
        std::string target = row.at(fss.memory.state_names[m]).get<std::string>();
        if (target.empty())
          throw ParseError("missing move for " + arena.name(v) + " in state " +
                           fss.memory.state_names[m]);
        fss.set_next_move(v, m, arena.vertex(target));
      }
    }
    require_compatible(arena, fss);
    return fss;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed strategy file: ") + e.what());
  }
}

}  // namespace rrsynth

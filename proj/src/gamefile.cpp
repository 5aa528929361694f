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

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> meaningful_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    out.push_back({number, line.substr(begin, end - begin + 1)});
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct RawCondition {
  std::size_t line;
  std::vector<std::string> request, response;
  std::string penalty;  // descriptor, may be empty
};

struct RawGameFile {
  RawArena arena;
  std::vector<std::tuple<std::size_t, std::string, std::string, std::string>> weighted_edges;
  std::vector<RawCondition> conditions;
  std::string default_penalty;
  bool has_weights = false;
};

RawGameFile parse_sections(const std::string& text, bool expect_weights) {
  RawGameFile out;
  enum class Section { None, Vertices, Edges, Conditions, Defaults };
  Section section = Section::None;

  for (const Line& ln : meaningful_lines(text)) {
    if (ln.text.front() == '[') {
      if (ln.text == "[vertices]") {
        section = Section::Vertices;
      } else if (ln.text == "[edges]") {
        section = Section::Edges;
      } else if (ln.text == "[conditions]") {
        if (expect_weights)
          throw ParseError(ln.number, 1, "a mean-payoff game file has no [conditions]");
        section = Section::Conditions;
      } else if (ln.text == "[defaults]") {
        section = Section::Defaults;
      } else {
        throw ParseError(ln.number, 1, "unknown section " + ln.text);
      }
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError(ln.number, 1, "content before the first section header");
      case Section::Vertices: {
        auto toks = split_ws(ln.text);
        if (toks.size() != 2)
          throw ParseError(ln.number, 1, "expected: vertex-name owner");
        if (toks[1] != "0" && toks[1] != "1")
          throw ParseError(ln.number, 1, "owner must be 0 or 1");
        out.arena.vertices.emplace_back(toks[0], toks[1] == "1" ? 1 : 0);
        break;
      }
      case Section::Edges: {
        auto toks = split_ws(ln.text);
        if (expect_weights) {
          if (toks.size() != 3)
            throw ParseError(ln.number, 1, "expected: from to weight");
          out.weighted_edges.emplace_back(ln.number, toks[0], toks[1], toks[2]);
        } else {
          if (toks.size() != 2) throw ParseError(ln.number, 1, "expected: from to");
          out.weighted_edges.emplace_back(ln.number, toks[0], toks[1], "");
        }
        break;
      }
      case Section::Conditions: {
        RawCondition cond;
        cond.line = ln.number;
        std::istringstream segs(ln.text);
        std::string seg;
        while (std::getline(segs, seg, '|')) {
          auto colon = seg.find(':');
          if (colon == std::string::npos)
            throw ParseError(ln.number, 1, "expected 'key: ...' segments separated by '|'");
          std::string key = seg.substr(0, colon);
          auto kb = key.find_first_not_of(" \t");
          auto ke = key.find_last_not_of(" \t");
          key = kb == std::string::npos ? "" : key.substr(kb, ke - kb + 1);
          std::string rest = seg.substr(colon + 1);
          if (key == "Q") {
            cond.request = split_ws(rest);
          } else if (key == "P") {
            cond.response = split_ws(rest);
          } else if (key == "penalty") {
            auto toks = split_ws(rest);
            std::string d;
            for (const auto& t : toks) d += (d.empty() ? "" : " ") + t;
            cond.penalty = d;
          } else {
            throw ParseError(ln.number, 1, "unknown condition key '" + key + "'");
          }
        }
        out.conditions.push_back(std::move(cond));
        break;
      }
      case Section::Defaults: {
        auto toks = split_ws(ln.text);
        if (toks.empty() || toks[0] != "penalty")
          throw ParseError(ln.number, 1, "unknown default '" + ln.text + "'");
        std::string d;
        for (std::size_t i = 1; i < toks.size(); ++i) d += (d.empty() ? "" : " ") + toks[i];
        out.default_penalty = d;
        break;
      }
    }
  }
  return out;
}

Arena arena_from(RawGameFile& raw) {
  RawArena ra = raw.arena;
  for (const auto& [line, from, to, weight] : raw.weighted_edges)
    ra.edges.emplace_back(from, to);
  return validate_arena(ra);
}

}  // namespace

RRGame parse_game(const std::string& text) {
  RawGameFile raw = parse_sections(text, false);
  Arena arena = arena_from(raw);

  std::vector<RRCondition> conditions;
  std::vector<PenaltyFn> penalties;
  PenaltyFn default_penalty = raw.default_penalty.empty()
                                  ? PenaltyFn::identity()
                                  : PenaltyFn::parse_descriptor(raw.default_penalty);
  for (const RawCondition& rc : raw.conditions) {
    RRCondition cond;
    for (const std::string& name : rc.request) cond.request.push_back(arena.vertex(name));
    for (const std::string& name : rc.response) cond.response.push_back(arena.vertex(name));
    conditions.push_back(std::move(cond));
    penalties.push_back(rc.penalty.empty() ? default_penalty
                                           : PenaltyFn::parse_descriptor(rc.penalty));
  }
  return make_rr_game(std::move(arena), std::move(conditions), std::move(penalties));
}

std::string serialize_game(const RRGame& game) {
  std::ostringstream os;
  os << "[vertices]\n";
  for (Vertex v = 0; v < game.arena.num_vertices(); ++v)
    os << game.arena.name(v) << " " << game.arena.owner(v) << "\n";
  os << "\n[edges]\n";
  for (Vertex v = 0; v < game.arena.num_vertices(); ++v)
    for (Vertex u : game.arena.successors(v))
      os << game.arena.name(v) << " " << game.arena.name(u) << "\n";
  os << "\n[conditions]\n";
  for (std::size_t j = 0; j < game.k(); ++j) {
    os << "Q:";
    for (Vertex v : game.conditions[j].request) os << " " << game.arena.name(v);
    os << " | P:";
    for (Vertex v : game.conditions[j].response) os << " " << game.arena.name(v);
    os << " | penalty: " << game.penalties[j].descriptor() << "\n";
  }
  return os.str();
}

MeanPayoffGame parse_mpg(const std::string& text) {
  RawGameFile raw = parse_sections(text, true);
  Arena arena = arena_from(raw);

  std::vector<std::vector<std::int64_t>> weights(arena.num_vertices());
  for (auto& row : weights) row.clear();
  // Successor lists are sorted and deduplicated; recover the weight per edge
  // by matching on the target index.
  std::vector<std::vector<std::pair<Vertex, std::int64_t>>> given(arena.num_vertices());
  for (const auto& [line, from, to, wtext] : raw.weighted_edges) {
    std::int64_t w = 0;
    try {
      std::size_t pos = 0;
      w = std::stoll(wtext, &pos);
      if (pos != wtext.size()) throw std::invalid_argument(wtext);
    } catch (const std::exception&) {
      throw ParseError(line, 1, "bad edge weight '" + wtext + "'");
    }
    given[arena.vertex(from)].emplace_back(arena.vertex(to), w);
  }
  for (Vertex v = 0; v < arena.num_vertices(); ++v) {
    weights[v].assign(arena.successors(v).size(), 0);
    for (const auto& [to, w] : given[v]) {
      const auto& succ = arena.successors(v);
      auto it = std::lower_bound(succ.begin(), succ.end(), to);
      weights[v][static_cast<std::size_t>(it - succ.begin())] = w;
    }
  }
  return make_mpg(std::move(arena), std::move(weights));
}

std::string serialize_mpg(const MeanPayoffGame& game) {
  std::ostringstream os;
  os << "[vertices]\n";
  for (Vertex v = 0; v < game.arena.num_vertices(); ++v)
    os << game.arena.name(v) << " " << game.arena.owner(v) << "\n";
  os << "\n[edges]\n";
  for (Vertex v = 0; v < game.arena.num_vertices(); ++v) {
    const auto& succ = game.arena.successors(v);
    for (std::size_t i = 0; i < succ.size(); ++i)
      os << game.arena.name(v) << " " << game.arena.name(succ[i]) << " "
         << game.weights[v][i] << "\n";
  }
  return os.str();
}

}  // namespace rrsynth

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

#include "rrsynth/rrcore.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rrsynth {

PenaltyFn PenaltyFn::identity() { return PenaltyFn(Kind::Identity, 1, 0, {}); }

PenaltyFn PenaltyFn::affine(std::uint64_t slope, std::uint64_t offset) {
  if (slope == 0) throw SemanticError("affine penalty needs slope >= 1 to be strictly increasing");
  return PenaltyFn(Kind::Affine, slope, offset, {});
}

PenaltyFn PenaltyFn::table(std::vector<std::uint64_t> values) {
  if (values.empty()) throw SemanticError("table penalty needs at least one value");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] >= values[i + 1])
      throw SemanticError("table penalty values must be strictly increasing");
  return PenaltyFn(Kind::Table, 1, 0, std::move(values));
}

BigNat PenaltyFn::eval(const BigNat& n) const {
  switch (kind_) {
    case Kind::Identity:
      return n;
    case Kind::Affine:
      return BigNat(slope_) * n + offset_;
    case Kind::Table: {
      BigNat len = values_.size();
      if (n < len) return values_[static_cast<std::size_t>(n)];
      return BigNat(values_.back()) + (n - (len - 1));
    }
  }
  throw std::logic_error("unreachable");
}

std::int64_t PenaltyFn::eval64(std::uint64_t n) const {
  BigNat v = eval(BigNat(n));
  if (v > std::numeric_limits<std::int64_t>::max() / 4)
    throw SizeLimitError("penalty value " + abbreviate(v) + " exceeds the machine-word range");
  return static_cast<std::int64_t>(v);
}

BigNat PenaltyFn::pseudo_inverse(const BigNat& v) const {
  switch (kind_) {
    case Kind::Identity:
      return v;
    case Kind::Affine: {
      if (v < offset_)
        throw SemanticError("pseudo-inverse below range: value " + abbreviate(v) +
                            " < f(0) = " + std::to_string(offset_));
      return (v - offset_) / slope_;
    }
    case Kind::Table: {
      if (v < values_.front())
        throw SemanticError("pseudo-inverse below range: value " + abbreviate(v) +
                            " < f(0) = " + std::to_string(values_.front()));
      if (v >= values_.back())
        return BigNat(values_.size() - 1) + (v - values_.back());
      auto it = std::upper_bound(values_.begin(), values_.end(), v);
      return BigNat(static_cast<std::size_t>(it - values_.begin()) - 1);
    }
  }
  throw std::logic_error("unreachable");
}

std::string PenaltyFn::descriptor() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::Affine:
      return "affine " + std::to_string(slope_) + " " + std::to_string(offset_);
    case Kind::Table: {
      std::ostringstream os;
      os << "table";
      for (auto v : values_) os << " " << v;
      return os.str();
    }
  }
  throw std::logic_error("unreachable");
}

PenaltyFn PenaltyFn::parse_descriptor(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  if (!(is >> word)) throw SemanticError("empty penalty descriptor");
  auto rest_numbers = [&is] {
    std::vector<std::uint64_t> out;
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw SemanticError("bad number '" + tok + "' in penalty descriptor");
      }
    }
    return out;
  };
  if (word == "identity") {
    if (!rest_numbers().empty()) throw SemanticError("identity penalty takes no parameters");
    return identity();
  }
  if (word == "affine") {
    auto nums = rest_numbers();
    if (nums.size() != 2) throw SemanticError("affine penalty needs exactly: slope offset");
    return affine(nums[0], nums[1]);
  }
  if (word == "table") return table(rest_numbers());
  throw SemanticError("unknown penalty kind '" + word + "'");
}

bool operator==(const PenaltyFn& a, const PenaltyFn& b) {
  return a.kind_ == b.kind_ && a.slope_ == b.slope_ && a.offset_ == b.offset_ &&
         a.values_ == b.values_;
}

BigNat penalty_pseudo_inverse(const PenaltyFn& f, const BigNat& v) {
  return f.pseudo_inverse(v);
}

RRGame make_rr_game(Arena arena, std::vector<RRCondition> conditions,
                    std::vector<PenaltyFn> penalties) {
  if (conditions.size() != penalties.size())
    throw SemanticError("need one penalty function per condition");
  if (conditions.size() > 64)
    throw SizeLimitError("at most 64 conditions are supported");
  RRGame g{std::move(arena), std::move(conditions), std::move(penalties)};
  g.req_mask_.assign(g.arena.num_vertices(), 0);
  g.resp_mask_.assign(g.arena.num_vertices(), 0);
  for (std::size_t j = 0; j < g.conditions.size(); ++j) {
    for (Vertex v : g.conditions[j].request) {
      if (v >= g.arena.num_vertices())
        throw SemanticError("condition " + std::to_string(j + 1) + " requests an unknown vertex");
      g.req_mask_[v] |= 1ull << j;
    }
    for (Vertex v : g.conditions[j].response) {
      if (v >= g.arena.num_vertices())
        throw SemanticError("condition " + std::to_string(j + 1) + " responds at an unknown vertex");
      g.resp_mask_[v] |= 1ull << j;
    }
  }
  return g;
}

bool WaitingVector::all_zero() const {
  if (bot) return false;
  return std::all_of(t.begin(), t.end(), [](std::uint64_t x) { return x == 0; });
}

bool leq(const WaitingVector& a, const WaitingVector& b) {
  if (a.bot || b.bot) return a.bot && b.bot;
  for (std::size_t j = 0; j < a.t.size(); ++j)
    if (a.t[j] > b.t[j]) return false;
  return true;
}

std::string WaitingVector::str() const {
  if (bot) return "bot";
  std::string s = "(";
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(t[j]);
  }
  return s + ")";
}

WaitingVector waiting_step(const WaitingVector& t, Vertex v, const RRGame& game,
                           std::span<const std::uint64_t> caps) {
  if (t.bot) return WaitingVector::bottom(game.k());
  if (!caps.empty()) {
    for (std::size_t j = 0; j < game.k(); ++j)
      if (t.t[j] == caps[j] && !game.in_response(j, v))
        return WaitingVector::bottom(game.k());
  }
  WaitingVector out = t;
  for (std::size_t j = 0; j < game.k(); ++j) {
    if (t.t[j] == 0) {
      out.t[j] = (game.in_request(j, v) && !game.in_response(j, v)) ? 1 : 0;
    } else {
      out.t[j] = game.in_response(j, v) ? 0 : t.t[j] + 1;
    }
  }
  return out;
}

BigNat prefix_penalty(const WaitingVector& t, const std::vector<PenaltyFn>& penalties) {
  if (t.bot) throw SemanticError("prefix penalty is undefined on the bot vector");
  BigNat sum = 0;
  for (std::size_t j = 0; j < penalties.size(); ++j) sum += penalties[j].eval(BigNat(t.t[j]));
  return sum;
}

std::vector<AnnotatedStep> annotate_prefix(const RRGame& game, const PlayPrefix& w) {
  if (w.empty()) throw SemanticError("invalid prefix: empty");
  require_play_prefix(game.arena, w);
  std::vector<AnnotatedStep> out;
  out.reserve(w.size());
  WaitingVector t = WaitingVector::zero(game.k());
  for (Vertex v : w) {
    t = waiting_step(t, v, game);
    out.push_back({t, prefix_penalty(t, game.penalties)});
  }
  return out;
}

Value lasso_value(const RRGame& game, const LassoPlay& play, std::uint64_t start_cap) {
  require_lasso(game.arena, play);
  const std::size_t k = game.k();

  WaitingVector t = WaitingVector::zero(k);
  for (Vertex v : play.prefix) t = waiting_step(t, v, game);

  // A coordinate diverges iff the cycle contains no response for it while a
  // request is open at cycle entry or gets opened inside the cycle.
  for (std::size_t j = 0; j < k; ++j) {
    bool answered = false, opened = false;
    for (Vertex v : play.cycle) {
      if (game.in_response(j, v)) answered = true;
      if (game.in_request(j, v) && !game.in_response(j, v)) opened = true;
    }
    if (!answered && (t.t[j] > 0 || opened)) return Value::infinity();
  }

  if (start_cap == 0)
    start_cap = play.prefix.size() +
                (game.arena.num_vertices() + 2) * play.cycle.size() + 1;

  // Iterate the cycle until (cycle position, waiting vector) repeats; the
  // penalty sequence is then periodic and the limsup of the Cesaro averages
  // equals the period mean.
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, std::size_t> seen;
  std::vector<BigNat> penalties;
  std::size_t step = 0;
  for (;;) {
    std::size_t pos = step % play.cycle.size();
    auto key = std::make_pair(pos, t.t);
    auto [it, fresh] = seen.emplace(key, step);
    if (!fresh) {
      std::size_t first = it->second;
      BigNat sum = 0;
      for (std::size_t i = first; i < step; ++i) sum += penalties[i];
      return Value(BigRat(BigInt(sum), BigInt(step - first)));
    }
    t = waiting_step(t, play.cycle[pos], game);
    for (std::uint64_t x : t.t)
      if (x > start_cap) return Value::infinity();  // safety net; unreachable after the exact test
    penalties.push_back(prefix_penalty(t, game.penalties));
    ++step;
  }
}

}  // namespace rrsynth

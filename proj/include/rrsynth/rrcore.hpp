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

#ifndef RRSYNTH_RRCORE_HPP
#define RRSYNTH_RRCORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrsynth/arena.hpp"
#include "rrsynth/value.hpp"

namespace rrsynth {

/// A request/response pair (Q, P): every visit to Q must be followed by a
/// later visit to P. The sets may overlap; a vertex in both makes a request
/// that is answered on the spot.
struct RRCondition {
  std::vector<Vertex> request;
  std::vector<Vertex> response;
};

/// A strictly increasing penalty on waiting times, integer-valued.
/// Kinds: identity; affine slope*n + offset (slope >= 1); explicit table of
/// strictly increasing values extended beyond its length with slope 1.
class PenaltyFn {
 public:
  enum class Kind { Identity, Affine, Table };

  static PenaltyFn identity();
  static PenaltyFn affine(std::uint64_t slope, std::uint64_t offset);
  static PenaltyFn table(std::vector<std::uint64_t> values);

  Kind kind() const { return kind_; }

  BigNat eval(const BigNat& n) const;
  /// eval() for machine-word waiting times, with overflow detection.
  std::int64_t eval64(std::uint64_t n) const;

  /// max { n : f(n) <= v }; the monotone pseudo-inverse. Throws SemanticError
  /// when v < f(0) (no such n).
  BigNat pseudo_inverse(const BigNat& v) const;

  /// A descriptor round-tripping through the game file format, e.g.
  /// "identity", "affine 2 1", "table 0 5 9".
  std::string descriptor() const;
  static PenaltyFn parse_descriptor(const std::string& text);

  friend bool operator==(const PenaltyFn& a, const PenaltyFn& b);

 private:
  PenaltyFn(Kind kind, std::uint64_t slope, std::uint64_t offset,
            std::vector<std::uint64_t> values)
      : kind_(kind), slope_(slope), offset_(offset), values_(std::move(values)) {}

  Kind kind_;
  std::uint64_t slope_ = 1, offset_ = 0;     // affine
  std::vector<std::uint64_t> values_;        // table
};

/// max { n : f(n) <= v }. Free-function form of PenaltyFn::pseudo_inverse.
BigNat penalty_pseudo_inverse(const PenaltyFn& f, const BigNat& v);

/// An arena with k request/response conditions and matching penalties.
struct RRGame {
  Arena arena;
  std::vector<RRCondition> conditions;
  std::vector<PenaltyFn> penalties;

  std::size_t k() const { return conditions.size(); }
  bool in_request(std::size_t j, Vertex v) const { return req_mask_[v] >> j & 1u; }
  bool in_response(std::size_t j, Vertex v) const { return resp_mask_[v] >> j & 1u; }
  std::uint64_t request_mask(Vertex v) const { return req_mask_[v]; }
  std::uint64_t response_mask(Vertex v) const { return resp_mask_[v]; }

  friend RRGame make_rr_game(Arena arena, std::vector<RRCondition> conditions,
                             std::vector<PenaltyFn> penalties);

 private:
  RRGame(Arena a, std::vector<RRCondition> c, std::vector<PenaltyFn> p)
      : arena(std::move(a)), conditions(std::move(c)), penalties(std::move(p)) {}

  std::vector<std::uint64_t> req_mask_, resp_mask_;  // bit j set iff v in Q_j / P_j
};

/// Validates membership of the condition sets and builds the label masks.
/// Conditions and penalties must have equal length; at most 64 conditions.
RRGame make_rr_game(Arena arena, std::vector<RRCondition> conditions,
                    std::vector<PenaltyFn> penalties);

/// Per-condition waiting times of a play prefix. `bot` marks that some
/// coordinate exceeded its cap; it absorbs all further updates.
struct WaitingVector {
  std::vector<std::uint64_t> t;
  bool bot = false;

  static WaitingVector zero(std::size_t k) { return WaitingVector{std::vector<std::uint64_t>(k, 0), false}; }
  static WaitingVector bottom(std::size_t k) { return WaitingVector{std::vector<std::uint64_t>(k, 0), true}; }

  bool all_zero() const;
  /// Componentwise order; bot is incomparable to everything but itself.
  friend bool leq(const WaitingVector& a, const WaitingVector& b);
  friend bool operator==(const WaitingVector& a, const WaitingVector& b) {
    return a.bot == b.bot && (a.bot || a.t == b.t);
  }
  std::string str() const;
};

/// One step of the waiting-time recurrence on arrival at v:
///   0     if t_j = 0 and v not in Q_j \ P_j,
///   1     if t_j = 0 and v in  Q_j \ P_j,
///   0     if t_j > 0 and v in  P_j,
///   t_j+1 if t_j > 0 and v not in P_j.
/// With caps: the result is bot iff some j has t_j = cap_j and v not in P_j.
/// bot maps to bot.
WaitingVector waiting_step(const WaitingVector& t, Vertex v, const RRGame& game,
                           std::span<const std::uint64_t> caps = {});

/// Total penalty of a prefix with waiting vector t: sum_j f_j(t_j).
BigNat prefix_penalty(const WaitingVector& t, const std::vector<PenaltyFn>& penalties);

struct AnnotatedStep {
  WaitingVector wait;
  BigNat penalty;
};

/// Waiting vector and penalty of every prefix of w: entry l carries the
/// values for w[0..l].
std::vector<AnnotatedStep> annotate_prefix(const RRGame& game, const PlayPrefix& w);

/// Exact value of an ultimately periodic play: the limit superior of the mean
/// accumulated penalties, which for an eventually periodic penalty sequence
/// equals the mean over one period. Infinite iff some condition has an open
/// request that the cycle never answers. start_cap == 0 selects a bound large
/// enough that the finite case always repeats before reaching it.
Value lasso_value(const RRGame& game, const LassoPlay& play, std::uint64_t start_cap = 0);

}  // namespace rrsynth

#endif  // RRSYNTH_RRCORE_HPP

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

#ifndef RRSYNTH_BOUNDS_HPP
#define RRSYNTH_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rrsynth/rrcore.hpp"
#include "rrsynth/value.hpp"

namespace rrsynth {

/// Two positions of a play with the same vertex where the later waiting-time
/// vector dominates the earlier one componentwise.
struct DicksonPair {
  std::size_t n1, n2;  // n1 < n2
};

/// The quantitative Dickson bound: every play infix of this length in an
/// s-vertex, k-condition game contains a dickson pair.
///   b(s, 0) = s + 1
///   b(s, k) = (b(s, k-1) + s * k! * prod_{j=0}^{k-1} b(s, j)) + 1
/// Doubly exponential in k; k is capped to keep results representable.
BigNat dickson_bound(std::uint64_t s, std::uint64_t k);

/// Closed-form upper bound on b(s, k) for k >= 1:
///   2^(2^(k-1)) * (s+1)^(2^k) * k! * prod_{j=1}^{k-1} (j!)^(2^(k-(j+1)))
BigNat dickson_bound_closed(std::uint64_t s, std::uint64_t k);

/// Searches window positions [from, to) of an annotated play prefix for the
/// lexicographically least dickson pair. The annotations must come from
/// annotate_prefix on the uncapped recurrence.
std::optional<DicksonPair> find_dickson_pair(const PlayPrefix& w,
                                             const std::vector<AnnotatedStep>& annotated,
                                             std::size_t from, std::size_t to);

/// Removes the loop between the pair's positions (keeping position n1,
/// dropping n1+1..n2). The result is a valid play prefix whose final waiting
/// vector is componentwise at most the original one. Throws SemanticError if
/// the pair is not a dickson pair of w.
PlayPrefix remove_loop(const PlayPrefix& w, const DicksonPair& pair, const RRGame& game);

/// Synthesis thresholds t_max_j = f_j^{-1}(val_G) + b(s, k-1), the waiting-time
/// caps beyond which no optimal strategy needs to go.
std::vector<BigNat> synthesis_thresholds(const RRGame& game);

}  // namespace rrsynth

#endif  // RRSYNTH_BOUNDS_HPP

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

#include "rrsynth/bounds.hpp"

#include "rrsynth/buchi.hpp"

namespace rrsynth {

namespace {

// Beyond this the results would not fit in memory, let alone on a screen.
constexpr std::uint64_t kMaxK = 24;

void check_args(std::uint64_t s, std::uint64_t k) {
  if (s == 0) throw SemanticError("dickson bound needs s >= 1");
  if (k > kMaxK)
    throw SizeLimitError("dickson bound for k > " + std::to_string(kMaxK) +
                         " is too large to materialize");
}

BigNat factorial(std::uint64_t n) {
  BigNat f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

BigNat pow_big(const BigNat& base, const BigNat& exp) {
  if (exp > (BigNat(1) << 32))
    throw SizeLimitError("exponent too large in closed-form dickson bound");
  BigNat result = 1, b = base;
  BigNat e = exp;
  while (e > 0) {
    if ((e & 1) != 0) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

}  // namespace

BigNat dickson_bound(std::uint64_t s, std::uint64_t k) {
  check_args(s, k);
  std::vector<BigNat> b;
  b.push_back(BigNat(s) + 1);  // b(s, 0)
  BigNat running_product = b[0];
  for (std::uint64_t i = 1; i <= k; ++i) {
    BigNat next = b[i - 1] + BigNat(s) * factorial(i) * running_product + 1;
    b.push_back(next);
    running_product *= next;
  }
  return b[static_cast<std::size_t>(k)];
}

BigNat dickson_bound_closed(std::uint64_t s, std::uint64_t k) {
  check_args(s, k);
  if (k == 0) throw SemanticError("closed-form dickson bound needs k >= 1");
  BigNat two_pow = pow_big(2, BigNat(1) << (k - 1));
  BigNat s_pow = pow_big(BigNat(s) + 1, BigNat(1) << k);
  BigNat result = two_pow * s_pow * factorial(k);
  for (std::uint64_t j = 1; j + 1 <= k; ++j)
    result *= pow_big(factorial(j), BigNat(1) << (k - (j + 1)));
  return result;
}

std::optional<DicksonPair> find_dickson_pair(const PlayPrefix& w,
                                             const std::vector<AnnotatedStep>& annotated,
                                             std::size_t from, std::size_t to) {
  if (annotated.size() != w.size())
    throw SemanticError("annotation length does not match the prefix");
  to = std::min(to, w.size());
  for (std::size_t n1 = from; n1 < to; ++n1)
    for (std::size_t n2 = n1 + 1; n2 < to; ++n2)
      if (w[n1] == w[n2] && leq(annotated[n1].wait, annotated[n2].wait))
        return DicksonPair{n1, n2};
  return std::nullopt;
}

PlayPrefix remove_loop(const PlayPrefix& w, const DicksonPair& pair, const RRGame& game) {
  if (pair.n1 >= pair.n2 || pair.n2 >= w.size())
    throw SemanticError("invalid dickson pair: positions out of range");
  auto annotated = annotate_prefix(game, w);
  if (w[pair.n1] != w[pair.n2] || !leq(annotated[pair.n1].wait, annotated[pair.n2].wait))
    throw SemanticError("invalid dickson pair: vertex or dominance requirement fails");
  PlayPrefix out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pair.n1) + 1);
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pair.n2) + 1, w.end());
  return out;
}

std::vector<BigNat> synthesis_thresholds(const RRGame& game) {
  std::vector<BigNat> out;
  if (game.k() == 0) return out;
  BigNat val_g = value_bound(game);
  BigNat b = dickson_bound(game.arena.num_vertices(), game.k() - 1);
  out.reserve(game.k());
  for (std::size_t j = 0; j < game.k(); ++j)
    out.push_back(game.penalties[j].pseudo_inverse(val_g) + b);
  return out;
}

}  // namespace rrsynth

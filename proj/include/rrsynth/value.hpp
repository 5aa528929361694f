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

#ifndef RRSYNTH_VALUE_HPP
#define RRSYNTH_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rrsynth {

using BigInt = boost::multiprecision::cpp_int;
using BigNat = boost::multiprecision::cpp_int;  // nonnegative by convention
using BigRat = boost::multiprecision::cpp_rational;

/// An exact game value: a rational in lowest terms, or infinity.
/// Infinity compares greater than every rational.
class Value {
 public:
  Value() : infinite_(false), v_(0) {}
  explicit Value(BigRat v) : infinite_(false), v_(std::move(v)) {}
  Value(const BigInt& num, const BigInt& den) : infinite_(false), v_(num, den) {}
  static Value infinity() {
    Value x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const { return infinite_; }
  const BigRat& rational() const { return v_; }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Value& a, const Value& b) { return a < b || a == b; }
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator>=(const Value& a, const Value& b) { return b <= a; }

  /// "p/q" in lowest terms ("p" when q == 1), or "inf".
  std::string str() const {
    if (infinite_) return "inf";
    BigInt num = boost::multiprecision::numerator(v_);
    BigInt den = boost::multiprecision::denominator(v_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  bool infinite_;
  BigRat v_;
};

/// Decimal digits of a nonnegative big integer, abbreviated when huge.
inline std::string abbreviate(const BigNat& n, std::size_t max_digits = 40) {
  std::string s = n.str();
  if (s.size() <= max_digits) return s;
  return s.substr(0, 8) + "..." + s.substr(s.size() - 4) + " (" +
         std::to_string(s.size()) + " digits)";
}

}  // namespace rrsynth

#endif  // RRSYNTH_VALUE_HPP

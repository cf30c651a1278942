// Copyright 2026 The Duet Enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUET_COMMON_PRIVACY_COST_H_
#define DUET_COMMON_PRIVACY_COST_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "duet/common/decimal.h"

namespace duet {

// A non-negative exact decimal or +infinity.
class ExtReal {
 public:
  ExtReal() : value_(Decimal()) {}
  ExtReal(Decimal value) : value_(std::move(value)) {}  // NOLINT
  static ExtReal Infinity() { return ExtReal(std::nullopt); }
  static ExtReal Zero() { return ExtReal(Decimal()); }
  static ExtReal One() { return ExtReal(Decimal::FromInt(1)); }

  bool IsFinite() const { return value_.has_value(); }
  bool IsInfinite() const { return !value_.has_value(); }
  bool IsZero() const { return IsFinite() && value_->IsZero(); }
  // Requires IsFinite().
  const Decimal& value() const { return *value_; }

  // "inf" for infinity, otherwise the exact decimal text.
  std::string ToString() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  // 0 * inf = 0: an expression that does not depend on a variable does not
  // inherit that variable's infinite sensitivity.
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtReal& r) {
    return os << r.ToString();
  }

 private:
  explicit ExtReal(std::optional<Decimal> value) : value_(std::move(value)) {}
  std::optional<Decimal> value_;
};

ExtReal Max(const ExtReal& a, const ExtReal& b);

// An (epsilon, delta) pair. Addition is sequential composition.
struct PrivCost {
  ExtReal epsilon;
  ExtReal delta;

  static PrivCost Zero() { return {}; }
  static PrivCost Infinite() {
    return {ExtReal::Infinity(), ExtReal::Infinity()};
  }

  bool IsFinite() const { return epsilon.IsFinite() && delta.IsFinite(); }
  bool IsZero() const { return epsilon.IsZero() && delta.IsZero(); }
  // Componentwise <=.
  bool FitsWithin(const PrivCost& bound) const {
    return epsilon <= bound.epsilon && delta <= bound.delta;
  }

  friend PrivCost operator+(const PrivCost& a, const PrivCost& b) {
    return {a.epsilon + b.epsilon, a.delta + b.delta};
  }
  PrivCost& operator+=(const PrivCost& other) {
    return *this = *this + other;
  }
  friend bool operator==(const PrivCost& a, const PrivCost& b) = default;
  friend std::ostream& operator<<(std::ostream& os, const PrivCost& c) {
    return os << "<" << c.epsilon << ", " << c.delta << ">";
  }
};

// Variable name -> sensitivity. An absent variable has sensitivity 0.
using SensMap = std::map<std::string, ExtReal>;
// Variable name -> privacy cost. An absent variable costs (0, 0).
using PrivMap = std::map<std::string, PrivCost>;

}  // namespace duet

#endif  // DUET_COMMON_PRIVACY_COST_H_

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

#ifndef DUET_COMMON_DECIMAL_H_
#define DUET_COMMON_DECIMAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "boost/multiprecision/cpp_int.hpp"

namespace duet {

// An exact decimal number: an arbitrary-precision integer mantissa and a
// base-10 scale. Privacy parameters and budgets use this type so that
// subtraction and comparison never drift.
//
// The scale of a parsed literal is retained ("0.0010" stays "0.0010") so
// that printing reproduces what was written. Comparison and equality are
// numeric: Decimal("1.0") == Decimal("1").
class Decimal {
 public:
  Decimal() = default;

  // Accepts [-]digits[.digits]. No exponents, no leading '+'.
  static absl::StatusOr<Decimal> Parse(absl::string_view text);
  static Decimal FromInt(int64_t value);

  std::string ToString() const;
  // Correctly rounded conversion.
  double ToDouble() const;

  bool IsZero() const { return mantissa_.is_zero(); }
  bool IsNegative() const { return mantissa_.sign() < 0; }
  uint32_t scale() const { return scale_; }

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  friend Decimal operator*(const Decimal& a, const Decimal& b);
  Decimal& operator+=(const Decimal& other) { return *this = *this + other; }
  Decimal& operator-=(const Decimal& other) { return *this = *this - other; }

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Decimal& d) {
    return os << d.ToString();
  }

 private:
  using BigInt = boost::multiprecision::cpp_int;

  Decimal(BigInt mantissa, uint32_t scale)
      : mantissa_(std::move(mantissa)), scale_(scale) {}
  BigInt Rescaled(uint32_t scale) const;

  BigInt mantissa_ = 0;
  uint32_t scale_ = 0;
};

}  // namespace duet

#endif  // DUET_COMMON_DECIMAL_H_

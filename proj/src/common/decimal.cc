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

#include "duet/common/decimal.h"

#include <algorithm>
#include <cstdlib>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

boost::multiprecision::cpp_int Pow10(uint32_t n) {
  boost::multiprecision::cpp_int result = 1;
  for (uint32_t i = 0; i < n; ++i) result *= 10;
  return result;
}

}  // namespace

absl::StatusOr<Decimal> Decimal::Parse(absl::string_view text) {
  absl::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  size_t dot = rest.find('.');
  absl::string_view int_part = rest.substr(0, dot);
  absl::string_view frac_part =
      dot == absl::string_view::npos ? absl::string_view() : rest.substr(dot + 1);
  auto all_digits = [](absl::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return absl::ascii_isdigit(c); });
  };
  if (int_part.empty() || !all_digits(int_part) || !all_digits(frac_part) ||
      (dot != absl::string_view::npos && frac_part.empty())) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("malformed decimal '", text, "'"));
  }
  // cpp_int reads a leading 0 as an octal prefix.
  std::string digits = absl::StrCat(int_part, frac_part);
  size_t first = digits.find_first_not_of('0');
  BigInt mantissa =
      first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
  if (negative) mantissa = -mantissa;
  return Decimal(std::move(mantissa), static_cast<uint32_t>(frac_part.size()));
}

Decimal Decimal::FromInt(int64_t value) { return Decimal(BigInt(value), 0); }

std::string Decimal::ToString() const {
  BigInt magnitude = boost::multiprecision::abs(mantissa_);
  std::string digits = magnitude.str();
  if (digits.size() <= scale_) {
    digits.insert(0, scale_ - digits.size() + 1, '0');
  }
  std::string out = IsNegative() ? "-" : "";
  if (scale_ == 0) return out + digits;
  size_t split = digits.size() - scale_;
  return absl::StrCat(out, digits.substr(0, split), ".", digits.substr(split));
}

double Decimal::ToDouble() const {
  std::string text = ToString();
  return std::strtod(text.c_str(), nullptr);
}

Decimal::BigInt Decimal::Rescaled(uint32_t scale) const {
  return mantissa_ * Pow10(scale - scale_);
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  uint32_t scale = std::max(a.scale_, b.scale_);
  return Decimal(a.Rescaled(scale) + b.Rescaled(scale), scale);
}

Decimal operator-(const Decimal& a, const Decimal& b) {
  uint32_t scale = std::max(a.scale_, b.scale_);
  return Decimal(a.Rescaled(scale) - b.Rescaled(scale), scale);
}

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(a.mantissa_ * b.mantissa_, a.scale_ + b.scale_);
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  uint32_t scale = std::max(a.scale_, b.scale_);
  Decimal::BigInt lhs = a.Rescaled(scale);
  Decimal::BigInt rhs = b.Rescaled(scale);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace duet

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

#include "duet/common/privacy_cost.h"

namespace duet {

std::string ExtReal::ToString() const {
  return IsFinite() ? value_->ToString() : "inf";
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.IsInfinite() || b.IsInfinite()) return ExtReal::Infinity();
  return ExtReal(a.value() + b.value());
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.IsZero() || b.IsZero()) return ExtReal::Zero();
  if (a.IsInfinite() || b.IsInfinite()) return ExtReal::Infinity();
  return ExtReal(a.value() * b.value());
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.IsInfinite() || b.IsInfinite()) {
    return a.IsInfinite() <=> b.IsInfinite();
  }
  return a.value() <=> b.value();
}

ExtReal Max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

}  // namespace duet

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

#ifndef DUET_ENCLAVE_BUDGET_H_
#define DUET_ENCLAVE_BUDGET_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/crypto/crypto.h"
#include "json.hpp"

namespace duet {

// Remaining budget, signed by the enclave key. `serial` increases by one
// with every charge; serial 0 is the initial budget.
struct SignedBudget {
  Decimal epsilon;
  Decimal delta;
  uint64_t serial = 0;
  std::string sig;

  // Length-prefixed: epsilon, delta, serial (decimal text).
  std::string CanonicalBytes() const;
  bool Verify(const crypto::VerifyingKey& enclave_key) const;
};

enum class BudgetComponent { kEpsilon, kDelta };

// One budget component as served by GET /epsilon and GET /delta, signed on
// its own so that each endpoint's answer verifies in isolation.
struct SignedComponent {
  BudgetComponent component = BudgetComponent::kEpsilon;
  Decimal value;
  uint64_t serial = 0;
  std::string sig;

  // Length-prefixed: "epsilon" | "delta", value, serial.
  std::string CanonicalBytes() const;
  bool Verify(const crypto::VerifyingKey& enclave_key) const;
};

// {"eps", "delta", "serial", "sig"}; decimals travel as strings.
nlohmann::json SignedBudgetToJson(const SignedBudget& b);
absl::StatusOr<SignedBudget> SignedBudgetFromJson(const nlohmann::json& j);

// {"eps" | "delta", "serial", "sig"}.
nlohmann::json SignedComponentToJson(const SignedComponent& c);
absl::StatusOr<SignedComponent> SignedComponentFromJson(
    const nlohmann::json& j, BudgetComponent component);

}  // namespace duet

#endif  // DUET_ENCLAVE_BUDGET_H_

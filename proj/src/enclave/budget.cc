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

#include "duet/enclave/budget.h"

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

const char* ComponentName(BudgetComponent c) {
  return c == BudgetComponent::kEpsilon ? "epsilon" : "delta";
}
const char* ComponentKey(BudgetComponent c) {
  return c == BudgetComponent::kEpsilon ? "eps" : "delta";
}

absl::Status Malformed(absl::string_view what) {
  return MakeError(ErrorKind::kBadRequest,
                   absl::StrCat("malformed signed budget: ", what));
}

absl::StatusOr<Decimal> DecimalField(const nlohmann::json& j,
                                     const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) return Malformed(name);
  absl::StatusOr<Decimal> d = Decimal::Parse(it->get<std::string>());
  if (!d.ok()) return Malformed(name);
  return d;
}

absl::StatusOr<uint64_t> SerialField(const nlohmann::json& j) {
  auto it = j.find("serial");
  if (it == j.end() || !it->is_number_unsigned()) return Malformed("serial");
  return it->get<uint64_t>();
}

absl::StatusOr<std::string> SigField(const nlohmann::json& j) {
  auto it = j.find("sig");
  if (it == j.end() || !it->is_string()) return Malformed("sig");
  absl::StatusOr<std::string> sig = crypto::Base64Decode(it->get<std::string>());
  if (!sig.ok()) return Malformed("sig");
  return sig;
}

}  // namespace

std::string SignedBudget::CanonicalBytes() const {
  std::string eps = epsilon.ToString();
  std::string d = delta.ToString();
  std::string s = absl::StrCat(serial);
  return crypto::LengthPrefixed({eps, d, s});
}

bool SignedBudget::Verify(const crypto::VerifyingKey& enclave_key) const {
  return enclave_key.Verify(crypto::Sha256(CanonicalBytes()), sig);
}

std::string SignedComponent::CanonicalBytes() const {
  std::string v = value.ToString();
  std::string s = absl::StrCat(serial);
  return crypto::LengthPrefixed({ComponentName(component), v, s});
}

bool SignedComponent::Verify(const crypto::VerifyingKey& enclave_key) const {
  return enclave_key.Verify(crypto::Sha256(CanonicalBytes()), sig);
}

nlohmann::json SignedBudgetToJson(const SignedBudget& b) {
  return {{"eps", b.epsilon.ToString()},
          {"delta", b.delta.ToString()},
          {"serial", b.serial},
          {"sig", crypto::Base64Encode(b.sig)}};
}

absl::StatusOr<SignedBudget> SignedBudgetFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return Malformed("not an object");
  SignedBudget b;
  absl::StatusOr<Decimal> eps = DecimalField(j, "eps");
  if (!eps.ok()) return eps.status();
  absl::StatusOr<Decimal> delta = DecimalField(j, "delta");
  if (!delta.ok()) return delta.status();
  absl::StatusOr<uint64_t> serial = SerialField(j);
  if (!serial.ok()) return serial.status();
  absl::StatusOr<std::string> sig = SigField(j);
  if (!sig.ok()) return sig.status();
  b.epsilon = *std::move(eps);
  b.delta = *std::move(delta);
  b.serial = *serial;
  b.sig = *std::move(sig);
  return b;
}

nlohmann::json SignedComponentToJson(const SignedComponent& c) {
  return {{ComponentKey(c.component), c.value.ToString()},
          {"serial", c.serial},
          {"sig", crypto::Base64Encode(c.sig)}};
}

absl::StatusOr<SignedComponent> SignedComponentFromJson(
    const nlohmann::json& j, BudgetComponent component) {
  if (!j.is_object()) return Malformed("not an object");
  SignedComponent c;
  c.component = component;
  absl::StatusOr<Decimal> value = DecimalField(j, ComponentKey(component));
  if (!value.ok()) return value.status();
  absl::StatusOr<uint64_t> serial = SerialField(j);
  if (!serial.ok()) return serial.status();
  absl::StatusOr<std::string> sig = SigField(j);
  if (!sig.ok()) return sig.status();
  c.value = *std::move(value);
  c.serial = *serial;
  c.sig = *std::move(sig);
  return c;
}

}  // namespace duet

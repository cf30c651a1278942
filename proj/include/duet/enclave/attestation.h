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

#ifndef DUET_ENCLAVE_ATTESTATION_H_
#define DUET_ENCLAVE_ATTESTATION_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/crypto/crypto.h"
#include "duet/crypto/envelope.h"
#include "json.hpp"

namespace duet {

constexpr size_t kQuoteNonceSize = 16;

// Attestation evidence. `sig` is the hardware root's signature over the
// SHA-256 of the canonical encoding of the other fields.
struct Quote {
  std::string measurement;     // 32 raw bytes
  std::string enclave_pubkey;  // EnclavePublicKey PEM bundle
  Decimal initial_epsilon;
  Decimal initial_delta;
  std::string nonce;  // 16 raw bytes
  std::string sig;

  // Length-prefixed: hex(measurement), enclave_pubkey, initial_epsilon,
  // initial_delta, hex(nonce).
  std::string CanonicalBytes() const;

  friend bool operator==(const Quote&, const Quote&) = default;
};

// {"measurement": hex, "enclave_pubkey": pem,
//  "initial_budget": {"eps": "2.0", "delta": "0.002"},
//  "nonce": hex, "sig": base64}
nlohmann::json QuoteToJson(const Quote& quote);
absl::StatusOr<Quote> QuoteFromJson(const nlohmann::json& j);

// Stands in for the key fused into the CPU. Whoever holds the private half
// can produce quotes; verifiers hold only the public half.
class HardwareRoot {
 public:
  static HardwareRoot Generate();
  static absl::StatusOr<HardwareRoot> FromPrivatePem(absl::string_view pem);

  void SignQuote(Quote& quote) const;
  crypto::VerifyingKey PublicKey() const { return key_.PublicKey(); }
  std::string PublicKeyPem() const { return key_.PublicKey().ToPem(); }
  std::string PrivateKeyPem() const { return key_.ToPrivatePem(); }

 private:
  explicit HardwareRoot(crypto::SigningKey key) : key_(std::move(key)) {}
  crypto::SigningKey key_;
};

struct QuoteClaims {
  EnclavePublicKey enclave_key;
  Decimal initial_epsilon;
  Decimal initial_delta;
};

// Accepts iff the root signature verifies, the measurement matches and the
// nonce echoes the challenge; checked in that order. Rejections carry
// kBadSignature, kWrongMeasurement or kNonceMismatch.
absl::StatusOr<QuoteClaims> VerifyQuote(const Quote& quote,
                                        const crypto::VerifyingKey& root,
                                        absl::string_view expected_measurement,
                                        absl::string_view expected_nonce);

}  // namespace duet

#endif  // DUET_ENCLAVE_ATTESTATION_H_

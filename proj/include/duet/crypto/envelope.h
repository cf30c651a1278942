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

#ifndef DUET_CRYPTO_ENVELOPE_H_
#define DUET_CRYPTO_ENVELOPE_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "duet/crypto/crypto.h"
#include "json.hpp"

namespace duet {

// A hybrid-encrypted record.
//
//   wrapped_key = ephemeral X25519 public key (32 bytes)
//                 || AES-256-KW(KEK, DEK) (40 bytes)
//   KEK         = HKDF-SHA256(X25519(ephemeral, enclave), info =
//                   "duet-envelope-v1" || ephemeral pub || enclave pub)
//   ciphertext  = AES-256-GCM(DEK, nonce, aad = "duet-row-v1", payload)
//                 || tag
struct Envelope {
  std::string wrapped_key;
  std::string nonce;
  std::string ciphertext;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

constexpr size_t kWrappedKeySize = 72;
constexpr size_t kEnvelopeNonceSize = 12;

// kMalformedEnvelope if a field is missing or has the wrong size.
absl::Status CheckEnvelopeShape(const Envelope& envelope);

// {"wrapped_key", "nonce", "ciphertext"}, each base64.
nlohmann::json EnvelopeToJson(const Envelope& envelope);
absl::StatusOr<Envelope> EnvelopeFromJson(const nlohmann::json& j);

// The enclave's public identity: an Ed25519 key for budget signatures and an
// X25519 key for envelope key agreement, encoded as two concatenated
// SubjectPublicKeyInfo PEM blocks in that order.
struct EnclavePublicKey {
  std::string pem;
  crypto::VerifyingKey signing;
  std::string kem_raw;

  static absl::StatusOr<EnclavePublicKey> FromPem(absl::string_view pem);
};

absl::StatusOr<Envelope> SealEnvelope(absl::string_view plaintext,
                                      const EnclavePublicKey& recipient);
// kDecryptError on wrong key or any tampering.
absl::StatusOr<std::string> OpenEnvelope(const Envelope& envelope,
                                         const crypto::KemKeyPair& key);

}  // namespace duet

#endif  // DUET_CRYPTO_ENVELOPE_H_

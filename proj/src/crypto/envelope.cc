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

#include "duet/crypto/envelope.h"

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

constexpr absl::string_view kKekInfo = "duet-envelope-v1";
constexpr absl::string_view kRowAad = "duet-row-v1";
constexpr absl::string_view kPemEnd = "-----END PUBLIC KEY-----";

std::string DeriveKek(absl::string_view shared, absl::string_view ephemeral_pub,
                      absl::string_view recipient_pub) {
  return crypto::HkdfSha256(shared, "",
                            absl::StrCat(kKekInfo, ephemeral_pub, recipient_pub),
                            32);
}

}  // namespace

absl::Status CheckEnvelopeShape(const Envelope& envelope) {
  if (envelope.wrapped_key.size() != kWrappedKeySize) {
    return MakeError(ErrorKind::kMalformedEnvelope,
                     "wrapped_key is missing or has the wrong size");
  }
  if (envelope.nonce.size() != kEnvelopeNonceSize) {
    return MakeError(ErrorKind::kMalformedEnvelope,
                     "nonce is missing or has the wrong size");
  }
  if (envelope.ciphertext.size() < 16) {
    return MakeError(ErrorKind::kMalformedEnvelope,
                     "ciphertext is missing or truncated");
  }
  return absl::OkStatus();
}

nlohmann::json EnvelopeToJson(const Envelope& envelope) {
  return {{"wrapped_key", crypto::Base64Encode(envelope.wrapped_key)},
          {"nonce", crypto::Base64Encode(envelope.nonce)},
          {"ciphertext", crypto::Base64Encode(envelope.ciphertext)}};
}

absl::StatusOr<Envelope> EnvelopeFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kMalformedEnvelope,
                     "envelope must be an object");
  }
  Envelope out;
  for (auto [name, field] :
       {std::pair<const char*, std::string*>{"wrapped_key", &out.wrapped_key},
        {"nonce", &out.nonce},
        {"ciphertext", &out.ciphertext}}) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
      return MakeError(ErrorKind::kMalformedEnvelope,
                       absl::StrCat("envelope field '", name, "' is missing"));
    }
    absl::StatusOr<std::string> bytes =
        crypto::Base64Decode(it->get<std::string>());
    if (!bytes.ok()) {
      return MakeError(ErrorKind::kMalformedEnvelope,
                       absl::StrCat("envelope field '", name,
                                    "' is not base64"));
    }
    *field = *std::move(bytes);
  }
  if (absl::Status s = CheckEnvelopeShape(out); !s.ok()) return s;
  return out;
}

absl::StatusOr<EnclavePublicKey> EnclavePublicKey::FromPem(
    absl::string_view pem) {
  size_t first_end = pem.find(kPemEnd);
  if (first_end == absl::string_view::npos) {
    return MakeError(ErrorKind::kBadRequest, "enclave public key is not PEM");
  }
  first_end += kPemEnd.size();
  absl::StatusOr<crypto::VerifyingKey> signing =
      crypto::VerifyingKey::FromPem(pem.substr(0, first_end));
  if (!signing.ok()) return signing.status();
  absl::StatusOr<std::string> kem =
      crypto::KemPublicRawFromPem(pem.substr(first_end));
  if (!kem.ok()) return kem.status();
  return EnclavePublicKey{std::string(pem), *std::move(signing),
                          *std::move(kem)};
}

absl::StatusOr<Envelope> SealEnvelope(absl::string_view plaintext,
                                      const EnclavePublicKey& recipient) {
  crypto::KemKeyPair ephemeral = crypto::KemKeyPair::Generate();
  absl::StatusOr<std::string> shared = ephemeral.SharedSecret(recipient.kem_raw);
  if (!shared.ok()) return shared.status();
  std::string ephemeral_pub = ephemeral.PublicRaw();
  std::string kek = DeriveKek(*shared, ephemeral_pub, recipient.kem_raw);
  crypto::Cleanse(*shared);

  std::string dek = crypto::RandomBytes(32);
  Envelope out;
  out.nonce = crypto::RandomBytes(kEnvelopeNonceSize);
  absl::StatusOr<std::string> wrapped = crypto::AesKeyWrap(kek, dek);
  absl::StatusOr<std::string> ciphertext =
      crypto::AesGcmSeal(dek, out.nonce, kRowAad, plaintext);
  crypto::Cleanse(kek);
  crypto::Cleanse(dek);
  if (!wrapped.ok()) return wrapped.status();
  if (!ciphertext.ok()) return ciphertext.status();
  out.wrapped_key = absl::StrCat(ephemeral_pub, *wrapped);
  out.ciphertext = *std::move(ciphertext);
  return out;
}

absl::StatusOr<std::string> OpenEnvelope(const Envelope& envelope,
                                         const crypto::KemKeyPair& key) {
  if (absl::Status s = CheckEnvelopeShape(envelope); !s.ok()) {
    return MakeError(ErrorKind::kDecryptError, s.message());
  }
  absl::string_view wrapped = envelope.wrapped_key;
  absl::string_view ephemeral_pub = wrapped.substr(0, crypto::kRawKeySize);
  absl::StatusOr<std::string> shared = key.SharedSecret(ephemeral_pub);
  if (!shared.ok()) return shared.status();
  std::string kek = DeriveKek(*shared, ephemeral_pub, key.PublicRaw());
  crypto::Cleanse(*shared);
  absl::StatusOr<std::string> dek =
      crypto::AesKeyUnwrap(kek, wrapped.substr(crypto::kRawKeySize));
  crypto::Cleanse(kek);
  if (!dek.ok()) {
    return MakeError(ErrorKind::kDecryptError,
                     "envelope was not sealed to this enclave's key");
  }
  absl::StatusOr<std::string> plaintext =
      crypto::AesGcmOpen(*dek, envelope.nonce, kRowAad, envelope.ciphertext);
  crypto::Cleanse(*dek);
  return plaintext;
}

}  // namespace duet

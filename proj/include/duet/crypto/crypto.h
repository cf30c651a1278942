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

#ifndef DUET_CRYPTO_CRYPTO_H_
#define DUET_CRYPTO_CRYPTO_H_

#include <initializer_list>
#include <memory>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"

typedef struct evp_pkey_st EVP_PKEY;

// Thin RAII wrappers over OpenSSL. Byte strings are std::string.
namespace duet::crypto {

constexpr size_t kDigestSize = 32;
constexpr size_t kRawKeySize = 32;

std::string RandomBytes(size_t n);
std::string Sha256(absl::string_view data);

std::string HexEncode(absl::string_view bytes);
absl::StatusOr<std::string> HexDecode(absl::string_view hex);
std::string Base64Encode(absl::string_view bytes);
absl::StatusOr<std::string> Base64Decode(absl::string_view text);

// Canonical encoding for signing: each field as a 4-byte big-endian length
// followed by its bytes, in order.
std::string LengthPrefixed(std::initializer_list<absl::string_view> fields);

struct PkeyDeleter {
  void operator()(EVP_PKEY* key) const;
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;

// Ed25519 public key.
class VerifyingKey {
 public:
  static absl::StatusOr<VerifyingKey> FromPem(absl::string_view pem);
  static absl::StatusOr<VerifyingKey> FromRaw(absl::string_view raw);

  bool Verify(absl::string_view message, absl::string_view signature) const;
  std::string ToPem() const;
  std::string ToRaw() const;

 private:
  explicit VerifyingKey(PkeyPtr key) : key_(std::move(key)) {}
  std::shared_ptr<EVP_PKEY> key_;
};

// Ed25519 private key.
class SigningKey {
 public:
  static SigningKey Generate();
  static absl::StatusOr<SigningKey> FromPrivatePem(absl::string_view pem);

  std::string Sign(absl::string_view message) const;
  VerifyingKey PublicKey() const;
  // Only for the simulated hardware root key, which is provisioned from a
  // file. Enclave keys are never exported.
  std::string ToPrivatePem() const;
  std::string RawPrivateKey() const;

 private:
  explicit SigningKey(PkeyPtr key) : key_(std::move(key)) {}
  std::shared_ptr<EVP_PKEY> key_;
};

// X25519 key agreement key pair.
class KemKeyPair {
 public:
  static KemKeyPair Generate();

  std::string PublicRaw() const;
  std::string PublicPem() const;
  absl::StatusOr<std::string> SharedSecret(absl::string_view peer_raw) const;
  std::string RawPrivateKey() const;

 private:
  explicit KemKeyPair(PkeyPtr key) : key_(std::move(key)) {}
  std::shared_ptr<EVP_PKEY> key_;
};

absl::StatusOr<std::string> KemPublicRawFromPem(absl::string_view pem);

std::string HkdfSha256(absl::string_view ikm, absl::string_view salt,
                       absl::string_view info, size_t length);

// AES-256 key wrap (RFC 3394). Unwrap fails on any integrity error.
absl::StatusOr<std::string> AesKeyWrap(absl::string_view kek,
                                       absl::string_view key);
absl::StatusOr<std::string> AesKeyUnwrap(absl::string_view kek,
                                         absl::string_view wrapped);

// AES-256-GCM. The returned ciphertext has the 16-byte tag appended.
absl::StatusOr<std::string> AesGcmSeal(absl::string_view key,
                                       absl::string_view nonce,
                                       absl::string_view aad,
                                       absl::string_view plaintext);
absl::StatusOr<std::string> AesGcmOpen(absl::string_view key,
                                       absl::string_view nonce,
                                       absl::string_view aad,
                                       absl::string_view ciphertext);

void Cleanse(std::string& secret);

}  // namespace duet::crypto

#endif  // DUET_CRYPTO_CRYPTO_H_

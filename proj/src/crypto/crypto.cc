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

#include "duet/crypto/crypto.h"

#include <memory>

#include "absl/strings/escaping.h"
#include "absl/strings/str_cat.h"
#include "duet/common/error.h"
#include "openssl/bio.h"
#include "openssl/crypto.h"
#include "openssl/evp.h"
#include "openssl/kdf.h"
#include "openssl/pem.h"
#include "openssl/rand.h"

namespace duet::crypto {
namespace {

struct BioDeleter {
  void operator()(BIO* b) const { BIO_free(b); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
};
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;

const unsigned char* U(absl::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}
unsigned char* U(std::string& s) {
  return reinterpret_cast<unsigned char*>(s.data());
}

absl::Status CryptoError(absl::string_view what) {
  return MakeError(ErrorKind::kInternal, absl::StrCat("crypto: ", what));
}

PkeyPtr GenerateKey(int type) {
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_id(type, nullptr));
  EVP_PKEY* key = nullptr;
  if (ctx == nullptr || EVP_PKEY_keygen_init(ctx.get()) != 1 ||
      EVP_PKEY_keygen(ctx.get(), &key) != 1) {
    std::abort();
  }
  return PkeyPtr(key);
}

std::string RawPublic(EVP_PKEY* key) {
  size_t len = kRawKeySize;
  std::string out(len, '\0');
  EVP_PKEY_get_raw_public_key(key, U(out), &len);
  out.resize(len);
  return out;
}

std::string RawPrivate(EVP_PKEY* key) {
  size_t len = kRawKeySize;
  std::string out(len, '\0');
  EVP_PKEY_get_raw_private_key(key, U(out), &len);
  out.resize(len);
  return out;
}

std::string PemOfPublic(EVP_PKEY* key) {
  std::unique_ptr<BIO, BioDeleter> bio(BIO_new(BIO_s_mem()));
  PEM_write_bio_PUBKEY(bio.get(), key);
  char* data = nullptr;
  long len = BIO_get_mem_data(bio.get(), &data);
  return std::string(data, static_cast<size_t>(len));
}

absl::StatusOr<PkeyPtr> ReadPublicPem(absl::string_view pem, int type) {
  std::unique_ptr<BIO, BioDeleter> bio(
      BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size())));
  PkeyPtr key(PEM_read_bio_PUBKEY(bio.get(), nullptr, nullptr, nullptr));
  if (key == nullptr || EVP_PKEY_id(key.get()) != type) {
    return MakeError(ErrorKind::kBadRequest, "malformed public key PEM");
  }
  return key;
}

}  // namespace

void PkeyDeleter::operator()(EVP_PKEY* key) const { EVP_PKEY_free(key); }

std::string RandomBytes(size_t n) {
  std::string out(n, '\0');
  if (RAND_bytes(U(out), static_cast<int>(n)) != 1) std::abort();
  return out;
}

std::string Sha256(absl::string_view data) {
  std::string out(kDigestSize, '\0');
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), U(out), &len, EVP_sha256(), nullptr);
  return out;
}

std::string HexEncode(absl::string_view bytes) {
  return absl::BytesToHexString(bytes);
}

absl::StatusOr<std::string> HexDecode(absl::string_view hex) {
  if (hex.size() % 2 != 0 ||
      hex.find_first_not_of("0123456789abcdefABCDEF") != absl::string_view::npos) {
    return MakeError(ErrorKind::kBadRequest, "malformed hex string");
  }
  return absl::HexStringToBytes(hex);
}

std::string Base64Encode(absl::string_view bytes) {
  return absl::Base64Escape(bytes);
}

absl::StatusOr<std::string> Base64Decode(absl::string_view text) {
  std::string out;
  if (!absl::Base64Unescape(text, &out)) {
    return MakeError(ErrorKind::kBadRequest, "malformed base64");
  }
  return out;
}

std::string LengthPrefixed(std::initializer_list<absl::string_view> fields) {
  std::string out;
  for (absl::string_view f : fields) {
    uint32_t n = static_cast<uint32_t>(f.size());
    out.push_back(static_cast<char>((n >> 24) & 0xff));
    out.push_back(static_cast<char>((n >> 16) & 0xff));
    out.push_back(static_cast<char>((n >> 8) & 0xff));
    out.push_back(static_cast<char>(n & 0xff));
    out.append(f.data(), f.size());
  }
  return out;
}

// --- Ed25519 ---------------------------------------------------------------

absl::StatusOr<VerifyingKey> VerifyingKey::FromPem(absl::string_view pem) {
  absl::StatusOr<PkeyPtr> key = ReadPublicPem(pem, EVP_PKEY_ED25519);
  if (!key.ok()) return key.status();
  return VerifyingKey(*std::move(key));
}

absl::StatusOr<VerifyingKey> VerifyingKey::FromRaw(absl::string_view raw) {
  PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, U(raw),
                                          raw.size()));
  if (key == nullptr) {
    return MakeError(ErrorKind::kBadRequest, "malformed Ed25519 public key");
  }
  return VerifyingKey(std::move(key));
}

bool VerifyingKey::Verify(absl::string_view message,
                          absl::string_view signature) const {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key_.get()) !=
      1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), U(signature), signature.size(),
                          U(message), message.size()) == 1;
}

std::string VerifyingKey::ToPem() const { return PemOfPublic(key_.get()); }
std::string VerifyingKey::ToRaw() const { return RawPublic(key_.get()); }

SigningKey SigningKey::Generate() {
  return SigningKey(GenerateKey(EVP_PKEY_ED25519));
}

absl::StatusOr<SigningKey> SigningKey::FromPrivatePem(absl::string_view pem) {
  std::unique_ptr<BIO, BioDeleter> bio(
      BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size())));
  PkeyPtr key(PEM_read_bio_PrivateKey(bio.get(), nullptr, nullptr, nullptr));
  if (key == nullptr || EVP_PKEY_id(key.get()) != EVP_PKEY_ED25519) {
    return MakeError(ErrorKind::kConfigError,
                     "expected an Ed25519 private key in PEM form");
  }
  return SigningKey(std::move(key));
}

std::string SigningKey::Sign(absl::string_view message) const {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  size_t len = 64;
  std::string sig(len, '\0');
  if (EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key_.get()) !=
          1 ||
      EVP_DigestSign(ctx.get(), U(sig), &len, U(message), message.size()) !=
          1) {
    std::abort();
  }
  sig.resize(len);
  return sig;
}

VerifyingKey SigningKey::PublicKey() const {
  return *VerifyingKey::FromRaw(RawPublic(key_.get()));
}

std::string SigningKey::ToPrivatePem() const {
  std::unique_ptr<BIO, BioDeleter> bio(BIO_new(BIO_s_mem()));
  PEM_write_bio_PrivateKey(bio.get(), key_.get(), nullptr, nullptr, 0, nullptr,
                           nullptr);
  char* data = nullptr;
  long len = BIO_get_mem_data(bio.get(), &data);
  return std::string(data, static_cast<size_t>(len));
}

std::string SigningKey::RawPrivateKey() const {
  return RawPrivate(key_.get());
}

// --- X25519 ----------------------------------------------------------------

KemKeyPair KemKeyPair::Generate() {
  return KemKeyPair(GenerateKey(EVP_PKEY_X25519));
}

std::string KemKeyPair::PublicRaw() const { return RawPublic(key_.get()); }
std::string KemKeyPair::PublicPem() const { return PemOfPublic(key_.get()); }
std::string KemKeyPair::RawPrivateKey() const {
  return RawPrivate(key_.get());
}

absl::StatusOr<std::string> KemKeyPair::SharedSecret(
    absl::string_view peer_raw) const {
  PkeyPtr peer(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr,
                                           U(peer_raw), peer_raw.size()));
  if (peer == nullptr) {
    return MakeError(ErrorKind::kDecryptError, "malformed X25519 public key");
  }
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(key_.get(), nullptr));
  size_t len = 0;
  if (ctx == nullptr || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1 ||
      EVP_PKEY_derive(ctx.get(), nullptr, &len) != 1) {
    return MakeError(ErrorKind::kDecryptError, "X25519 key agreement failed");
  }
  std::string secret(len, '\0');
  if (EVP_PKEY_derive(ctx.get(), U(secret), &len) != 1) {
    return MakeError(ErrorKind::kDecryptError, "X25519 key agreement failed");
  }
  secret.resize(len);
  return secret;
}

absl::StatusOr<std::string> KemPublicRawFromPem(absl::string_view pem) {
  absl::StatusOr<PkeyPtr> key = ReadPublicPem(pem, EVP_PKEY_X25519);
  if (!key.ok()) return key.status();
  return RawPublic(key->get());
}

// --- Symmetric -------------------------------------------------------------

std::string HkdfSha256(absl::string_view ikm, absl::string_view salt,
                       absl::string_view info, size_t length) {
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  std::string out(length, '\0');
  size_t len = length;
  if (ctx == nullptr || EVP_PKEY_derive_init(ctx.get()) != 1 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) != 1 ||
      EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), U(salt),
                                  static_cast<int>(salt.size())) != 1 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), U(ikm),
                                 static_cast<int>(ikm.size())) != 1 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), U(info),
                                  static_cast<int>(info.size())) != 1 ||
      EVP_PKEY_derive(ctx.get(), U(out), &len) != 1) {
    std::abort();
  }
  return out;
}

absl::StatusOr<std::string> AesKeyWrap(absl::string_view kek,
                                       absl::string_view key) {
  if (kek.size() != 32 || key.size() % 8 != 0 || key.size() < 16) {
    return CryptoError("bad key-wrap input sizes");
  }
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  EVP_CIPHER_CTX_set_flags(ctx.get(), EVP_CIPHER_CTX_FLAG_WRAP_ALLOW);
  std::string out(key.size() + 8, '\0');
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_wrap(), nullptr, U(kek),
                         nullptr) != 1 ||
      EVP_EncryptUpdate(ctx.get(), U(out), &len, U(key),
                        static_cast<int>(key.size())) != 1) {
    return CryptoError("key wrap failed");
  }
  out.resize(static_cast<size_t>(len));
  return out;
}

absl::StatusOr<std::string> AesKeyUnwrap(absl::string_view kek,
                                         absl::string_view wrapped) {
  if (kek.size() != 32 || wrapped.size() % 8 != 0 || wrapped.size() < 24) {
    return MakeError(ErrorKind::kDecryptError, "malformed wrapped key");
  }
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  EVP_CIPHER_CTX_set_flags(ctx.get(), EVP_CIPHER_CTX_FLAG_WRAP_ALLOW);
  std::string out(wrapped.size(), '\0');
  int len = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_wrap(), nullptr, U(kek),
                         nullptr) != 1 ||
      EVP_DecryptUpdate(ctx.get(), U(out), &len, U(wrapped),
                        static_cast<int>(wrapped.size())) <= 0) {
    return MakeError(ErrorKind::kDecryptError, "key unwrap failed");
  }
  out.resize(static_cast<size_t>(len));
  return out;
}

absl::StatusOr<std::string> AesGcmSeal(absl::string_view key,
                                       absl::string_view nonce,
                                       absl::string_view aad,
                                       absl::string_view plaintext) {
  if (key.size() != 32 || nonce.size() != 12) {
    return CryptoError("bad AES-GCM key or nonce size");
  }
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  std::string out(plaintext.size() + 16, '\0');
  int len = 0;
  int total = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, U(key),
                         U(nonce)) != 1 ||
      EVP_EncryptUpdate(ctx.get(), nullptr, &len, U(aad),
                        static_cast<int>(aad.size())) != 1 ||
      EVP_EncryptUpdate(ctx.get(), U(out), &len, U(plaintext),
                        static_cast<int>(plaintext.size())) != 1) {
    return CryptoError("AES-GCM encryption failed");
  }
  total = len;
  if (EVP_EncryptFinal_ex(ctx.get(), U(out) + total, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16,
                          U(out) + total + len) != 1) {
    return CryptoError("AES-GCM encryption failed");
  }
  total += len;
  out.resize(static_cast<size_t>(total) + 16);
  return out;
}

absl::StatusOr<std::string> AesGcmOpen(absl::string_view key,
                                       absl::string_view nonce,
                                       absl::string_view aad,
                                       absl::string_view ciphertext) {
  if (key.size() != 32 || nonce.size() != 12 || ciphertext.size() < 16) {
    return MakeError(ErrorKind::kDecryptError, "malformed ciphertext");
  }
  absl::string_view body = ciphertext.substr(0, ciphertext.size() - 16);
  std::string tag(ciphertext.substr(ciphertext.size() - 16));
  CipherCtxPtr ctx(EVP_CIPHER_CTX_new());
  std::string out(body.size(), '\0');
  int len = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, U(key),
                         U(nonce)) != 1 ||
      EVP_DecryptUpdate(ctx.get(), nullptr, &len, U(aad),
                        static_cast<int>(aad.size())) != 1 ||
      EVP_DecryptUpdate(ctx.get(), U(out), &len, U(body),
                        static_cast<int>(body.size())) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, U(tag)) != 1) {
    return MakeError(ErrorKind::kDecryptError, "AES-GCM decryption failed");
  }
  int total = len;
  if (EVP_DecryptFinal_ex(ctx.get(), U(out) + total, &len) != 1) {
    Cleanse(out);
    return MakeError(ErrorKind::kDecryptError,
                     "ciphertext authentication failed");
  }
  out.resize(static_cast<size_t>(total + len));
  return out;
}

void Cleanse(std::string& secret) {
  OPENSSL_cleanse(secret.data(), secret.size());
  secret.clear();
}

}  // namespace duet::crypto

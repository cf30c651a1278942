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

#include "duet/enclave/attestation.h"

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

absl::StatusOr<std::string> StringField(const nlohmann::json& j,
                                        const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) {
    return MakeError(ErrorKind::kBadRequest,
                     absl::StrCat("quote field '", name, "' is missing"));
  }
  return it->get<std::string>();
}

}  // namespace

std::string Quote::CanonicalBytes() const {
  std::string eps = initial_epsilon.ToString();
  std::string delta = initial_delta.ToString();
  return crypto::LengthPrefixed({crypto::HexEncode(measurement), enclave_pubkey,
                                 eps, delta, crypto::HexEncode(nonce)});
}

nlohmann::json QuoteToJson(const Quote& quote) {
  return {{"measurement", crypto::HexEncode(quote.measurement)},
          {"enclave_pubkey", quote.enclave_pubkey},
          {"initial_budget",
           {{"eps", quote.initial_epsilon.ToString()},
            {"delta", quote.initial_delta.ToString()}}},
          {"nonce", crypto::HexEncode(quote.nonce)},
          {"sig", crypto::Base64Encode(quote.sig)}};
}

absl::StatusOr<Quote> QuoteFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kBadRequest, "quote must be an object");
  }
  Quote q;
  absl::StatusOr<std::string> measurement = StringField(j, "measurement");
  absl::StatusOr<std::string> pubkey = StringField(j, "enclave_pubkey");
  absl::StatusOr<std::string> nonce = StringField(j, "nonce");
  absl::StatusOr<std::string> sig = StringField(j, "sig");
  for (const auto* s : {&measurement, &pubkey, &nonce, &sig}) {
    if (!s->ok()) return s->status();
  }
  auto budget = j.find("initial_budget");
  if (budget == j.end() || !budget->is_object()) {
    return MakeError(ErrorKind::kBadRequest, "quote lacks initial_budget");
  }
  absl::StatusOr<std::string> eps = StringField(*budget, "eps");
  absl::StatusOr<std::string> delta = StringField(*budget, "delta");
  if (!eps.ok()) return eps.status();
  if (!delta.ok()) return delta.status();

  absl::StatusOr<std::string> m = crypto::HexDecode(*measurement);
  absl::StatusOr<std::string> n = crypto::HexDecode(*nonce);
  absl::StatusOr<std::string> s = crypto::Base64Decode(*sig);
  absl::StatusOr<Decimal> e = Decimal::Parse(*eps);
  absl::StatusOr<Decimal> d = Decimal::Parse(*delta);
  if (!m.ok() || !n.ok() || !s.ok() || !e.ok() || !d.ok()) {
    return MakeError(ErrorKind::kBadRequest, "quote has a malformed field");
  }
  q.measurement = *std::move(m);
  q.enclave_pubkey = *std::move(pubkey);
  q.initial_epsilon = *std::move(e);
  q.initial_delta = *std::move(d);
  q.nonce = *std::move(n);
  q.sig = *std::move(s);
  return q;
}

HardwareRoot HardwareRoot::Generate() {
  return HardwareRoot(crypto::SigningKey::Generate());
}

absl::StatusOr<HardwareRoot> HardwareRoot::FromPrivatePem(
    absl::string_view pem) {
  absl::StatusOr<crypto::SigningKey> key =
      crypto::SigningKey::FromPrivatePem(pem);
  if (!key.ok()) return key.status();
  return HardwareRoot(*std::move(key));
}

void HardwareRoot::SignQuote(Quote& quote) const {
  quote.sig = key_.Sign(crypto::Sha256(quote.CanonicalBytes()));
}

absl::StatusOr<QuoteClaims> VerifyQuote(const Quote& quote,
                                        const crypto::VerifyingKey& root,
                                        absl::string_view expected_measurement,
                                        absl::string_view expected_nonce) {
  if (!root.Verify(crypto::Sha256(quote.CanonicalBytes()), quote.sig)) {
    return MakeError(ErrorKind::kBadSignature,
                     "quote signature does not verify under the root key");
  }
  if (quote.measurement != expected_measurement) {
    return MakeError(ErrorKind::kWrongMeasurement,
                     absl::StrCat("measurement ",
                                  crypto::HexEncode(quote.measurement),
                                  " is not the expected ",
                                  crypto::HexEncode(expected_measurement)));
  }
  if (quote.nonce != expected_nonce) {
    return MakeError(ErrorKind::kNonceMismatch,
                     "quote does not echo the challenge nonce");
  }
  absl::StatusOr<EnclavePublicKey> key =
      EnclavePublicKey::FromPem(quote.enclave_pubkey);
  if (!key.ok()) {
    return MakeError(ErrorKind::kBadSignature,
                     absl::StrCat("signed enclave key is unusable: ",
                                  key.status().message()));
  }
  return QuoteClaims{*std::move(key), quote.initial_epsilon,
                     quote.initial_delta};
}

}  // namespace duet

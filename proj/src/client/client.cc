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

#include "duet/client/client.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "duet/common/error.h"
#include "duet/enclave/attestation.h"
#include "httplib.h"

namespace duet {
namespace {

absl::Status PolicyError(absl::string_view what) {
  return MakeError(ErrorKind::kConfigError, absl::StrCat("policy: ", what));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorKind::kConfigError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Converts a non-2xx reply into the server's error.
absl::Status ServerError(const HttpReply& reply) {
  nlohmann::json body = nlohmann::json::parse(reply.body, nullptr, false);
  if (body.is_object() && body.contains("error_kind") &&
      body["error_kind"].is_string()) {
    ErrorKind kind = ErrorKindFromWireName(body["error_kind"].get<std::string>())
                         .value_or(ErrorKind::kInternal);
    return MakeError(kind, absl::StrCat("server returned ", reply.status, ": ",
                                        body.value("detail", "")));
  }
  return MakeError(ErrorKind::kProtocolError,
                   absl::StrCat("server returned ", reply.status));
}

absl::StatusOr<nlohmann::json> JsonBody(const HttpReply& reply) {
  if (reply.status != 200) return ServerError(reply);
  nlohmann::json body = nlohmann::json::parse(reply.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return MakeError(ErrorKind::kProtocolError, "response is not JSON");
  }
  return body;
}

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(const std::string& base_url) : client_(base_url) {
    client_.set_connection_timeout(5);
    client_.set_read_timeout(60);
  }

  absl::StatusOr<HttpReply> Get(
      const std::string& path,
      const std::map<std::string, std::string>& params) override {
    httplib::Params query(params.begin(), params.end());
    httplib::Result result = client_.Get(path, query, httplib::Headers());
    return Convert(result);
  }

  absl::StatusOr<HttpReply> Post(const std::string& path,
                                 const std::string& json_body) override {
    httplib::Result result =
        client_.Post(path, json_body, "application/json");
    return Convert(result);
  }

 private:
  static absl::StatusOr<HttpReply> Convert(const httplib::Result& result) {
    if (!result) {
      return MakeError(ErrorKind::kTransport,
                       absl::StrCat("request failed: ",
                                    httplib::to_string(result.error())));
    }
    return HttpReply{result->status, result->body};
  }

  httplib::Client client_;
};

}  // namespace

absl::StatusOr<OwnerPolicy> OwnerPolicy::Parse(absl::string_view text,
                                               const std::string& base_dir) {
  std::map<std::string, std::string> fields;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return PolicyError(absl::StrCat("expected key=value: ", line));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (!fields.emplace(key, value).second) {
      return PolicyError(absl::StrCat("duplicate key ", key));
    }
  }
  for (const auto& [key, value] : fields) {
    if (key != "max_epsilon" && key != "max_delta" && key != "measurement" &&
        key != "root_pubkey_file") {
      return PolicyError(absl::StrCat("unknown key ", key));
    }
  }
  for (const char* key :
       {"max_epsilon", "max_delta", "measurement", "root_pubkey_file"}) {
    if (!fields.contains(key)) {
      return PolicyError(absl::StrCat("missing key ", key));
    }
  }
  absl::StatusOr<Decimal> eps = Decimal::Parse(fields["max_epsilon"]);
  absl::StatusOr<Decimal> delta = Decimal::Parse(fields["max_delta"]);
  if (!eps.ok() || !delta.ok() || eps->IsNegative() || delta->IsNegative()) {
    return PolicyError("budget maxima must be non-negative decimals");
  }
  absl::StatusOr<std::string> measurement =
      crypto::HexDecode(fields["measurement"]);
  if (!measurement.ok() || measurement->size() != crypto::kDigestSize) {
    return PolicyError("measurement must be 64 hex digits");
  }
  std::filesystem::path key_path(fields["root_pubkey_file"]);
  if (key_path.is_relative() && !base_dir.empty()) {
    key_path = std::filesystem::path(base_dir) / key_path;
  }
  absl::StatusOr<std::string> pem = ReadFile(key_path.string());
  if (!pem.ok()) return pem.status();
  absl::StatusOr<crypto::VerifyingKey> root = crypto::VerifyingKey::FromPem(*pem);
  if (!root.ok()) return PolicyError("root_pubkey_file is not a public key");
  return OwnerPolicy{*eps, *delta, *measurement, *root};
}

absl::StatusOr<OwnerPolicy> OwnerPolicy::Load(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return Parse(*text, std::filesystem::path(path).parent_path().string());
}

std::unique_ptr<HttpTransport> MakeHttpTransport(const std::string& base_url) {
  return std::make_unique<HttplibTransport>(base_url);
}

absl::StatusOr<VerifiedServer> Negotiate(HttpTransport& transport,
                                         const OwnerPolicy& policy) {
  std::string nonce = crypto::RandomBytes(kQuoteNonceSize);
  absl::StatusOr<HttpReply> reply =
      transport.Get("/attest", {{"nonce", crypto::HexEncode(nonce)}});
  if (!reply.ok()) {
    return MakeError(ErrorKind::kTransport, reply.status().message());
  }
  absl::StatusOr<nlohmann::json> body = JsonBody(*reply);
  if (!body.ok()) {
    return MakeError(ErrorKind::kAttestFailed,
                     absl::StrCat("no quote: ", body.status().message()));
  }
  absl::StatusOr<Quote> quote = QuoteFromJson(*body);
  if (!quote.ok()) {
    return MakeError(ErrorKind::kAttestFailed,
                     absl::StrCat("malformed quote: ",
                                  quote.status().message()));
  }
  absl::StatusOr<QuoteClaims> claims =
      VerifyQuote(*quote, policy.root_key, policy.measurement, nonce);
  if (!claims.ok()) {
    return MakeError(ErrorKind::kAttestFailed,
                     absl::StrCat(WireName(GetErrorKind(claims.status())),
                                  ": ", claims.status().message()));
  }
  if (claims->initial_epsilon > policy.max_epsilon ||
      claims->initial_delta > policy.max_delta) {
    return MakeError(
        ErrorKind::kBudgetTooLarge,
        absl::StrCat("server budget (", claims->initial_epsilon.ToString(),
                     ", ", claims->initial_delta.ToString(),
                     ") exceeds policy (", policy.max_epsilon.ToString(), ", ",
                     policy.max_delta.ToString(), ")"));
  }
  return VerifiedServer{
      std::move(claims->enclave_key),
      PrivCost{ExtReal(claims->initial_epsilon),
               ExtReal(claims->initial_delta)}};
}

absl::StatusOr<Envelope> EncryptRow(const Row& row,
                                    const EnclavePublicKey& enclave_key) {
  return SealEnvelope(FormatRow(row), enclave_key);
}

absl::StatusOr<size_t> SubmitRow(HttpTransport& transport,
                                 const VerifiedServer& server, const Row& row) {
  absl::StatusOr<Envelope> envelope = EncryptRow(row, server.enclave_key);
  if (!envelope.ok()) return envelope.status();
  nlohmann::json request = {{"envelope", EnvelopeToJson(*envelope)}};
  absl::StatusOr<HttpReply> reply = transport.Post("/insert", request.dump());
  if (!reply.ok()) return reply.status();
  absl::StatusOr<nlohmann::json> body = JsonBody(*reply);
  if (!body.ok()) return body.status();
  auto count = body->find("count");
  if (count == body->end() || !count->is_number_unsigned()) {
    return MakeError(ErrorKind::kProtocolError, "insert reply lacks count");
  }
  return count->get<size_t>();
}

absl::StatusOr<QueryOutcome> SubmitQuery(HttpTransport& transport,
                                         const VerifiedServer& server,
                                         absl::string_view program) {
  nlohmann::json request = {{"program", std::string(program)}};
  absl::StatusOr<HttpReply> reply = transport.Post("/query", request.dump());
  if (!reply.ok()) return reply.status();
  absl::StatusOr<nlohmann::json> body = JsonBody(*reply);
  if (!body.ok()) return body.status();
  auto malformed = [] {
    return MakeError(ErrorKind::kProtocolError, "malformed query reply");
  };
  if (!body->contains("value") || !(*body)["value"].is_number() ||
      !body->contains("cost") || !(*body)["cost"].is_object() ||
      !body->contains("remaining")) {
    return malformed();
  }
  QueryOutcome outcome;
  outcome.value = (*body)["value"].get<double>();
  const nlohmann::json& cost = (*body)["cost"];
  if (!cost.contains("eps") || !cost["eps"].is_string() ||
      !cost.contains("delta") || !cost["delta"].is_string()) {
    return malformed();
  }
  absl::StatusOr<Decimal> eps = Decimal::Parse(cost["eps"].get<std::string>());
  absl::StatusOr<Decimal> delta =
      Decimal::Parse(cost["delta"].get<std::string>());
  if (!eps.ok() || !delta.ok()) return malformed();
  outcome.cost = PrivCost{ExtReal(*eps), ExtReal(*delta)};
  absl::StatusOr<SignedBudget> remaining =
      SignedBudgetFromJson((*body)["remaining"]);
  if (!remaining.ok()) return malformed();
  outcome.remaining = *remaining;
  outcome.remaining_verified =
      outcome.remaining.Verify(server.enclave_key.signing);
  return outcome;
}

bool IsAbort(const absl::Status& status) {
  ErrorKind kind = GetErrorKind(status);
  return kind == ErrorKind::kAttestFailed ||
         kind == ErrorKind::kBudgetTooLarge || kind == ErrorKind::kTransport;
}

}  // namespace duet

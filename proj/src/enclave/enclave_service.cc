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

#include "duet/enclave/enclave_service.h"

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

absl::StatusOr<std::string> RequireString(const nlohmann::json& j,
                                          const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) {
    return MakeError(ErrorKind::kBadRequest,
                     absl::StrCat("missing string field '", name, "'"));
  }
  return it->get<std::string>();
}

}  // namespace

absl::StatusOr<nlohmann::json> EnclaveService::Dispatch(
    FrameKind kind, const nlohmann::json& payload) {
  switch (kind) {
    case FrameKind::kAttest: {
      absl::StatusOr<std::string> hex = RequireString(payload, "nonce");
      if (!hex.ok()) return hex.status();
      absl::StatusOr<std::string> nonce = crypto::HexDecode(*hex);
      if (!nonce.ok()) return nonce.status();
      absl::StatusOr<Quote> quote = enclave_->GetQuote(*nonce);
      if (!quote.ok()) return quote.status();
      return QuoteToJson(*quote);
    }
    case FrameKind::kPubKey:
      return nlohmann::json{{"pem", enclave_->public_key_pem()}};
    case FrameKind::kBudget: {
      absl::StatusOr<std::string> component =
          RequireString(payload, "component");
      if (!component.ok()) return component.status();
      if (*component == "epsilon") {
        return SignedComponentToJson(
            enclave_->SignComponent(BudgetComponent::kEpsilon));
      }
      if (*component == "delta") {
        return SignedComponentToJson(
            enclave_->SignComponent(BudgetComponent::kDelta));
      }
      if (*component == "all") {
        return SignedBudgetToJson(enclave_->signed_budget());
      }
      return MakeError(ErrorKind::kBadRequest,
                       absl::StrCat("unknown budget component '", *component,
                                    "'"));
    }
    case FrameKind::kInsert: {
      auto it = payload.find("envelope");
      if (it == payload.end()) {
        return MakeError(ErrorKind::kMalformedEnvelope, "missing envelope");
      }
      absl::StatusOr<Envelope> envelope = EnvelopeFromJson(*it);
      if (!envelope.ok()) return envelope.status();
      absl::StatusOr<size_t> count = enclave_->Ingest(*envelope);
      if (!count.ok()) return count.status();
      return nlohmann::json{{"count", *count}};
    }
    case FrameKind::kQuery: {
      absl::StatusOr<std::string> program = RequireString(payload, "program");
      if (!program.ok()) return program.status();
      absl::StatusOr<QueryResult> result = enclave_->RunQuery(*program);
      if (!result.ok()) return result.status();
      return nlohmann::json{
          {"value", result->value},
          {"cost",
           {{"eps", result->cost.epsilon.ToString()},
            {"delta", result->cost.delta.ToString()}}},
          {"remaining", SignedBudgetToJson(result->remaining)}};
    }
  }
  return MakeError(ErrorKind::kProtocolError, "unknown frame kind");
}

BoundaryFrame EnclaveService::Handle(const BoundaryFrame& request) {
  BoundaryFrame response{request.request_id, request.kind, ""};
  nlohmann::json payload =
      nlohmann::json::parse(request.payload, nullptr, false);
  if (payload.is_discarded() || !payload.is_object()) {
    response.payload = ErrorPayload(
        MakeError(ErrorKind::kProtocolError, "request payload is not a JSON "
                                             "object"));
    return response;
  }
  absl::StatusOr<nlohmann::json> body = Dispatch(request.kind, payload);
  response.payload = body.ok() ? OkPayload(*body) : ErrorPayload(body.status());
  return response;
}

std::string EnclaveService::HandleBytes(absl::string_view request) {
  absl::StatusOr<BoundaryFrame> frame = DecodeFrame(request);
  if (!frame.ok()) {
    BoundaryFrame response;
    if (request.size() >= 8) {
      for (int i = 0; i < 8; ++i) {
        response.request_id =
            (response.request_id << 8) | static_cast<uint8_t>(request[i]);
      }
    }
    if (request.size() >= 9) {
      uint8_t k = static_cast<uint8_t>(request[8]);
      if (k >= 1 && k <= 5) response.kind = static_cast<FrameKind>(k);
    }
    response.payload = ErrorPayload(frame.status());
    return EncodeFrame(response);
  }
  return EncodeFrame(Handle(*frame));
}

}  // namespace duet

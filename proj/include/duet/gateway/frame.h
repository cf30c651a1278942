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

#ifndef DUET_GATEWAY_FRAME_H_
#define DUET_GATEWAY_FRAME_H_

#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace duet {

// Messages crossing the trust boundary between the untrusted gateway and
// the enclave host.
//
// Wire form: request_id (u64 BE) | kind (u8) | payload length (u32 BE) |
// payload. Payloads are JSON. A response carries the request's id and kind;
// its payload is {"ok": true, "body": {...}} or
// {"ok": false, "error_kind": "...", "detail": "..."}.
enum class FrameKind : uint8_t {
  kAttest = 1,   // {"nonce": hex16}        -> Quote
  kPubKey = 2,   // {}                      -> {"pem"}
  kBudget = 3,   // {"component": "epsilon" | "delta"} -> signed component
  kInsert = 4,   // {"envelope": {...}}     -> {"count"}
  kQuery = 5,    // {"program": text}       -> {"value", "cost", "remaining"}
};

struct BoundaryFrame {
  uint64_t request_id = 0;
  FrameKind kind = FrameKind::kAttest;
  std::string payload;

  friend bool operator==(const BoundaryFrame&, const BoundaryFrame&) = default;
};

constexpr size_t kFrameHeaderSize = 13;
constexpr uint32_t kMaxFramePayload = 16u << 20;

std::string EncodeFrame(const BoundaryFrame& frame);
// kProtocolError on truncation, trailing bytes, unknown kind or oversize.
absl::StatusOr<BoundaryFrame> DecodeFrame(absl::string_view bytes);
// Payload length announced by a header; validates kind and size.
absl::StatusOr<uint32_t> PayloadLength(absl::string_view header);

std::string OkPayload(const nlohmann::json& body);
std::string ErrorPayload(const absl::Status& status);
// The body of an ok response, or the carried error as a status whose kind
// is taken from "error_kind".
absl::StatusOr<nlohmann::json> ParseResponsePayload(absl::string_view payload);

}  // namespace duet

#endif  // DUET_GATEWAY_FRAME_H_

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

#include "duet/gateway/frame.h"

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

absl::Status ProtocolError(absl::string_view what) {
  return MakeError(ErrorKind::kProtocolError,
                   absl::StrCat("boundary protocol: ", what));
}

uint64_t ReadBigEndian(absl::string_view bytes) {
  uint64_t v = 0;
  for (char c : bytes) v = (v << 8) | static_cast<uint8_t>(c);
  return v;
}

void WriteBigEndian(std::string& out, uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

bool KnownKind(uint8_t k) { return k >= 1 && k <= 5; }

}  // namespace

std::string EncodeFrame(const BoundaryFrame& frame) {
  std::string out;
  out.reserve(kFrameHeaderSize + frame.payload.size());
  WriteBigEndian(out, frame.request_id, 8);
  out.push_back(static_cast<char>(frame.kind));
  WriteBigEndian(out, frame.payload.size(), 4);
  out += frame.payload;
  return out;
}

absl::StatusOr<uint32_t> PayloadLength(absl::string_view header) {
  if (header.size() < kFrameHeaderSize) return ProtocolError("short header");
  uint8_t kind = static_cast<uint8_t>(header[8]);
  if (!KnownKind(kind)) {
    return ProtocolError(absl::StrCat("unknown frame kind ", kind));
  }
  uint64_t len = ReadBigEndian(header.substr(9, 4));
  if (len > kMaxFramePayload) return ProtocolError("payload too large");
  return static_cast<uint32_t>(len);
}

absl::StatusOr<BoundaryFrame> DecodeFrame(absl::string_view bytes) {
  absl::StatusOr<uint32_t> len = PayloadLength(bytes);
  if (!len.ok()) return len.status();
  if (bytes.size() != kFrameHeaderSize + *len) {
    return ProtocolError("frame length does not match header");
  }
  BoundaryFrame frame;
  frame.request_id = ReadBigEndian(bytes.substr(0, 8));
  frame.kind = static_cast<FrameKind>(bytes[8]);
  frame.payload = std::string(bytes.substr(kFrameHeaderSize));
  return frame;
}

std::string OkPayload(const nlohmann::json& body) {
  return nlohmann::json{{"ok", true}, {"body", body}}.dump();
}

std::string ErrorPayload(const absl::Status& status) {
  return nlohmann::json{{"ok", false},
                        {"error_kind", WireName(GetErrorKind(status))},
                        {"detail", std::string(status.message())}}
      .dump();
}

absl::StatusOr<nlohmann::json> ParseResponsePayload(absl::string_view payload) {
  nlohmann::json j = nlohmann::json::parse(payload, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("ok") ||
      !j["ok"].is_boolean()) {
    return ProtocolError("malformed response payload");
  }
  if (j["ok"].get<bool>()) {
    if (!j.contains("body")) return ProtocolError("response lacks body");
    return j["body"];
  }
  std::string kind_name = j.value("error_kind", "Internal");
  std::string detail = j.value("detail", "");
  ErrorKind kind =
      ErrorKindFromWireName(kind_name).value_or(ErrorKind::kInternal);
  return MakeError(kind, detail);
}

}  // namespace duet

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

#include "duet/common/error.h"

#include <array>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace duet {
namespace {

constexpr absl::string_view kKindPayloadUrl = "type.duet/error_kind";
constexpr absl::string_view kLocationPayloadUrl = "type.duet/source_location";

absl::StatusCode CanonicalCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudgetExhausted:
      return absl::StatusCode::kResourceExhausted;
    case ErrorKind::kBadSignature:
    case ErrorKind::kWrongMeasurement:
    case ErrorKind::kNonceMismatch:
    case ErrorKind::kAttestFailed:
    case ErrorKind::kDecryptError:
      return absl::StatusCode::kPermissionDenied;
    case ErrorKind::kBudgetTooLarge:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorKind::kEnclaveUnavailable:
    case ErrorKind::kTransport:
      return absl::StatusCode::kUnavailable;
    case ErrorKind::kInternal:
    case ErrorKind::kEvalError:
    case ErrorKind::kProtocolError:
      return absl::StatusCode::kInternal;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

constexpr std::array<std::pair<ErrorKind, absl::string_view>, 25> kNames = {{
    {ErrorKind::kInternal, "Internal"},
    {ErrorKind::kParseError, "ParseError"},
    {ErrorKind::kTypeError, "TypeError"},
    {ErrorKind::kUnboundVariable, "UnboundVariable"},
    {ErrorKind::kSensitivityExceeded, "SensitivityExceeded"},
    {ErrorKind::kInfiniteCost, "InfiniteCost"},
    {ErrorKind::kNonConstantCost, "NonConstantCost"},
    {ErrorKind::kNotPrivFn, "NotPrivFn"},
    {ErrorKind::kSchemaMismatch, "SchemaMismatch"},
    {ErrorKind::kDomainError, "DomainError"},
    {ErrorKind::kEvalError, "EvalError"},
    {ErrorKind::kConfigError, "ConfigError"},
    {ErrorKind::kBudgetExhausted, "BudgetExhausted"},
    {ErrorKind::kDecryptError, "DecryptError"},
    {ErrorKind::kSchemaError, "SchemaError"},
    {ErrorKind::kMalformedEnvelope, "MalformedEnvelope"},
    {ErrorKind::kBadSignature, "BadSignature"},
    {ErrorKind::kWrongMeasurement, "WrongMeasurement"},
    {ErrorKind::kNonceMismatch, "NonceMismatch"},
    {ErrorKind::kProtocolError, "ProtocolError"},
    {ErrorKind::kEnclaveUnavailable, "EnclaveUnavailable"},
    {ErrorKind::kBadRequest, "BadRequest"},
    {ErrorKind::kTransport, "Transport"},
    {ErrorKind::kAttestFailed, "AttestFailed"},
    {ErrorKind::kBudgetTooLarge, "BudgetTooLarge"},
}};

absl::string_view KindName(ErrorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "Internal";
}

}  // namespace

absl::Status MakeError(ErrorKind kind, absl::string_view message) {
  absl::Status status(CanonicalCode(kind), message);
  status.SetPayload(kKindPayloadUrl, absl::Cord(KindName(kind)));
  return status;
}

absl::Status MakeError(ErrorKind kind, absl::string_view message,
                       SourceLocation location) {
  absl::Status status = MakeError(
      kind, absl::StrCat(location.line, ":", location.column, ": ", message));
  status.SetPayload(kLocationPayloadUrl,
                    absl::Cord(absl::StrCat(location.line, ":",
                                            location.column)));
  return status;
}

ErrorKind GetErrorKind(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kKindPayloadUrl);
  if (!payload.has_value()) return ErrorKind::kInternal;
  std::string name(*payload);
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return ErrorKind::kInternal;
}

std::optional<SourceLocation> GetErrorLocation(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kLocationPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  std::pair<std::string, std::string> parts =
      absl::StrSplit(std::string(*payload), ':');
  SourceLocation loc;
  if (!absl::SimpleAtoi(parts.first, &loc.line) ||
      !absl::SimpleAtoi(parts.second, &loc.column)) {
    return std::nullopt;
  }
  return loc;
}

bool IsTypeErrorFamily(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kTypeError:
    case ErrorKind::kUnboundVariable:
    case ErrorKind::kSensitivityExceeded:
    case ErrorKind::kInfiniteCost:
    case ErrorKind::kNonConstantCost:
      return true;
    default:
      return false;
  }
}

absl::string_view WireName(ErrorKind kind) {
  if (kind == ErrorKind::kUnboundVariable ||
      kind == ErrorKind::kSensitivityExceeded) {
    return "TypeError";
  }
  return KindName(kind);
}

std::optional<ErrorKind> ErrorKindFromWireName(absl::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace duet

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

#ifndef DUET_COMMON_ERROR_H_
#define DUET_COMMON_ERROR_H_

#include <optional>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"

namespace duet {

// Machine-readable error kinds. Every non-OK status produced by this library
// carries one of these as a payload so that the gateway can map failures to
// stable HTTP codes and wire names.
enum class ErrorKind {
  kInternal,
  kParseError,
  // Type-error family.
  kTypeError,
  kUnboundVariable,
  kSensitivityExceeded,
  kInfiniteCost,
  kNonConstantCost,
  // Query-form rejections.
  kNotPrivFn,
  kSchemaMismatch,
  // Runtime.
  kDomainError,
  kEvalError,
  kConfigError,
  kBudgetExhausted,
  kDecryptError,
  kSchemaError,
  kMalformedEnvelope,
  // Attestation.
  kBadSignature,
  kWrongMeasurement,
  kNonceMismatch,
  // Boundary and transport.
  kProtocolError,
  kEnclaveUnavailable,
  kBadRequest,
  kTransport,
  // Client-side aborts.
  kAttestFailed,
  kBudgetTooLarge,
};

struct SourceLocation {
  int line = 0;
  int column = 0;
};

absl::Status MakeError(ErrorKind kind, absl::string_view message);
absl::Status MakeError(ErrorKind kind, absl::string_view message,
                       SourceLocation location);

// Returns kInternal for statuses that were not produced by MakeError.
ErrorKind GetErrorKind(const absl::Status& status);
std::optional<SourceLocation> GetErrorLocation(const absl::Status& status);

bool IsTypeErrorFamily(ErrorKind kind);

// Stable names used in boundary and HTTP error payloads. The fine-grained
// type errors all surface as "TypeError" except the two that are query-form
// rejection reasons in their own right.
absl::string_view WireName(ErrorKind kind);
std::optional<ErrorKind> ErrorKindFromWireName(absl::string_view name);

}  // namespace duet

#endif  // DUET_COMMON_ERROR_H_

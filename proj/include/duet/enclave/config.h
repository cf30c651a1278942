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

#ifndef DUET_ENCLAVE_CONFIG_H_
#define DUET_ENCLAVE_CONFIG_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/lang/ast.h"

namespace duet {

// Curator-supplied start-up configuration. File form, one per line:
//
//   epsilon=2.0
//   delta=0.002
//   schema=M [L1, U | star, dR :: dR :: []]
//   build_id=duet-enclave-1.0
//
// Blank lines and lines starting with '#' are ignored.
struct EnclaveConfig {
  Decimal epsilon;
  Decimal delta;
  std::string schema_text;
  std::string build_id;

  static absl::StatusOr<EnclaveConfig> Parse(absl::string_view text);
};

// Checks eps > 0, delta >= 0 and that the schema is a matrix type.
absl::StatusOr<Ty> ValidateConfig(const EnclaveConfig& config);

// SHA-256 over build_id and the canonical configuration (exact budget
// decimals and the re-rendered schema). This is what verifiers pin.
absl::StatusOr<std::string> ComputeMeasurement(const EnclaveConfig& config);

}  // namespace duet

#endif  // DUET_ENCLAVE_CONFIG_H_

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

#include "duet/enclave/config.h"

#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "duet/common/error.h"
#include "duet/crypto/crypto.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"

namespace duet {

absl::StatusOr<EnclaveConfig> EnclaveConfig::Parse(absl::string_view text) {
  EnclaveConfig config;
  std::set<std::string> seen;
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return MakeError(ErrorKind::kConfigError,
                       absl::StrCat("line ", line_no, ": expected key=value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    absl::string_view value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      return MakeError(ErrorKind::kConfigError,
                       absl::StrCat("line ", line_no, ": duplicate key '", key,
                                    "'"));
    }
    if (key == "epsilon" || key == "delta") {
      absl::StatusOr<Decimal> d = Decimal::Parse(value);
      if (!d.ok()) {
        return MakeError(ErrorKind::kConfigError,
                         absl::StrCat("line ", line_no, ": ", key,
                                      " is not a decimal"));
      }
      (key == "epsilon" ? config.epsilon : config.delta) = *d;
    } else if (key == "schema") {
      config.schema_text = std::string(value);
    } else if (key == "build_id") {
      config.build_id = std::string(value);
    } else {
      return MakeError(ErrorKind::kConfigError,
                       absl::StrCat("line ", line_no, ": unknown key '", key,
                                    "'"));
    }
  }
  for (const char* required : {"epsilon", "delta", "schema", "build_id"}) {
    if (seen.count(required) == 0) {
      return MakeError(ErrorKind::kConfigError,
                       absl::StrCat("missing key '", required, "'"));
    }
  }
  return config;
}

absl::StatusOr<Ty> ValidateConfig(const EnclaveConfig& config) {
  if (config.epsilon.IsNegative() || config.epsilon.IsZero()) {
    return MakeError(ErrorKind::kConfigError, "epsilon must be > 0");
  }
  if (config.delta.IsNegative()) {
    return MakeError(ErrorKind::kConfigError, "delta must be >= 0");
  }
  absl::StatusOr<Ty> schema = ParseType(config.schema_text);
  if (!schema.ok()) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("schema: ", schema.status().message()));
  }
  if (!schema->Is<MatrixTy>()) {
    return MakeError(ErrorKind::kConfigError, "schema must be a matrix type");
  }
  return schema;
}

absl::StatusOr<std::string> ComputeMeasurement(const EnclaveConfig& config) {
  absl::StatusOr<Ty> schema = ValidateConfig(config);
  if (!schema.ok()) return schema.status();
  std::string eps = config.epsilon.ToString();
  std::string delta = config.delta.ToString();
  std::string rendered = RenderType(*schema);
  std::string canonical = crypto::LengthPrefixed({eps, delta, rendered});
  return crypto::Sha256(crypto::LengthPrefixed({config.build_id, canonical}));
}

}  // namespace duet

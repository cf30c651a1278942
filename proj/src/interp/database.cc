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

#include "duet/interp/database.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "duet/common/error.h"

namespace duet {

Database::Database(Ty schema) : schema_(std::move(schema)) {}

absl::Status Database::Append(Row row) {
  size_t columns = matrix_type().schema.size();
  if (row.size() != columns) {
    return MakeError(ErrorKind::kSchemaError,
                     absl::StrCat("row has ", row.size(),
                                  " fields; schema has ", columns, " columns"));
  }
  rows_.push_back(std::move(row));
  return absl::OkStatus();
}

absl::StatusOr<Row> ParseRow(absl::string_view text) {
  Row row;
  for (absl::string_view field : absl::StrSplit(text, ',')) {
    absl::StatusOr<Decimal> value =
        Decimal::Parse(absl::StripAsciiWhitespace(field));
    if (!value.ok()) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("row field '", field,
                                    "' is not a finite decimal"));
    }
    row.push_back(*std::move(value));
  }
  return row;
}

std::string FormatRow(const Row& row) {
  return absl::StrJoin(row, ",", [](std::string* out, const Decimal& d) {
    out->append(d.ToString());
  });
}

}  // namespace duet

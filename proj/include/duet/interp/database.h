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

#ifndef DUET_INTERP_DATABASE_H_
#define DUET_INTERP_DATABASE_H_

#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/lang/ast.h"

namespace duet {

using Row = std::vector<Decimal>;

// Decrypted rows conforming to a matrix schema. Only ever materialized
// inside the enclave.
class Database {
 public:
  // `schema` must be a matrix type.
  explicit Database(Ty schema);

  const Ty& schema() const { return schema_; }
  const MatrixTy& matrix_type() const { return *schema_.As<MatrixTy>(); }
  size_t size() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }

  // kSchemaError if the arity differs from the schema.
  absl::Status Append(Row row);

 private:
  Ty schema_;
  std::vector<Row> rows_;
};

// Parses "44.47,-73.21" into decimals. kSchemaError on malformed or
// non-finite values ("nan", "inf", "1e9" are all rejected).
absl::StatusOr<Row> ParseRow(absl::string_view text);
std::string FormatRow(const Row& row);

}  // namespace duet

#endif  // DUET_INTERP_DATABASE_H_

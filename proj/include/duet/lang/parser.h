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

#ifndef DUET_LANG_PARSER_H_
#define DUET_LANG_PARSER_H_

#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "duet/lang/ast.h"

namespace duet {

// Parses a MiniDuet program. Grammar (whitespace-insensitive):
//
//   expr   := 'plam' '.' IDENT ':' ty '=>' expr
//           | 'let' IDENT '=' expr 'in' expr
//           | 'gauss' '[' rexp ',' rexp ',' rexp ']' '<' idents '>' '{' expr '}'
//           | 'laplace' '[' rexp ',' rexp ']' '<' idents '>' '{' expr '}'
//           | 'rows' atom | 'real' atom | atom
//   atom   := IDENT | rexp | '(' expr ')'
//   rexp   := 'R+' '[' DECIMAL ']' | IDENT
//   idents := IDENT (',' IDENT)*
//
// Errors have kind kParseError and carry a source location payload and the
// set of tokens that would have been accepted (see ExpectedTokens).
absl::StatusOr<ExprPtr> Parse(absl::string_view source);

//   ty     := 'R' | 'dR' | 'R+' '[' DECIMAL ']'
//           | 'M' '[' 'L1' ',' 'U' '|' ('star' | NAT) ',' schema ']'
//   schema := scalar '::' schema | scalar '::' '[]'
//   scalar := 'R' | 'dR'
absl::StatusOr<Ty> ParseType(absl::string_view source);

// The expected-token set attached to a parse error, sorted.
std::vector<std::string> ExpectedTokens(const absl::Status& status);

}  // namespace duet

#endif  // DUET_LANG_PARSER_H_

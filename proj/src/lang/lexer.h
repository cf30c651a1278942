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

#ifndef DUET_LANG_LEXER_H_
#define DUET_LANG_LEXER_H_

#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "duet/common/error.h"

namespace duet::internal {

enum class TokenKind {
  kIdent,
  kNumber,  // DECIMAL or NAT; `has_dot` distinguishes.
  kKeyword,
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string text;
  SourceLocation location;
  bool has_dot = false;
};

// Splits `source` into tokens, terminated by a kEnd token. Keywords and
// punctuation are distinguished by their text.
absl::StatusOr<std::vector<Token>> Tokenize(absl::string_view source);

bool IsKeyword(absl::string_view word);

}  // namespace duet::internal

#endif  // DUET_LANG_LEXER_H_

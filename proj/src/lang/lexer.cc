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

#include "lexer.h"

#include <array>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace duet::internal {
namespace {

constexpr std::array<absl::string_view, 13> kKeywords = {
    "plam", "let", "in", "gauss", "laplace", "rows", "real",
    "R",    "dR",  "M",  "L1",    "U",       "star"};

bool IsIdentStart(char c) { return absl::ascii_isalpha(c) || c == '_'; }
bool IsIdentChar(char c) {
  return absl::ascii_isalnum(c) || c == '_' || c == '\'';
}

}  // namespace

bool IsKeyword(absl::string_view word) {
  for (absl::string_view k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

absl::StatusOr<std::vector<Token>> Tokenize(absl::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < source.size()) {
    char c = source[i];
    if (absl::ascii_isspace(c)) {
      advance(1);
      continue;
    }
    SourceLocation loc{line, column};
    if (IsIdentStart(c)) {
      size_t j = i;
      while (j < source.size() && IsIdentChar(source[j])) ++j;
      std::string word(source.substr(i, j - i));
      if (word == "R" && j < source.size() && source[j] == '+') {
        tokens.push_back({TokenKind::kKeyword, "R+", loc});
        advance(2);
        continue;
      }
      TokenKind kind = IsKeyword(word) ? TokenKind::kKeyword : TokenKind::kIdent;
      tokens.push_back({kind, std::move(word), loc});
      advance(j - i);
      continue;
    }
    if (absl::ascii_isdigit(c)) {
      size_t j = i;
      while (j < source.size() && absl::ascii_isdigit(source[j])) ++j;
      bool has_dot = false;
      if (j + 1 < source.size() && source[j] == '.' &&
          absl::ascii_isdigit(source[j + 1])) {
        has_dot = true;
        ++j;
        while (j < source.size() && absl::ascii_isdigit(source[j])) ++j;
      }
      tokens.push_back(
          {TokenKind::kNumber, std::string(source.substr(i, j - i)), loc,
           has_dot});
      advance(j - i);
      continue;
    }
    absl::string_view two = source.substr(i, 2);
    if (two == "=>" || two == "::") {
      tokens.push_back({TokenKind::kPunct, std::string(two), loc});
      advance(2);
      continue;
    }
    static constexpr absl::string_view kSingles = ".:=[],<>{}()|";
    if (kSingles.find(c) != absl::string_view::npos) {
      tokens.push_back({TokenKind::kPunct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    std::string shown = absl::ascii_isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : absl::StrCat("\\x", absl::Hex(
                                                      static_cast<unsigned char>(c),
                                                      absl::kZeroPad2));
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("unexpected character '", shown, "'"), loc);
  }
  tokens.push_back({TokenKind::kEnd, "", {line, column}});
  return tokens;
}

}  // namespace duet::internal

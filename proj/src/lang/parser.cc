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

#include "duet/lang/parser.h"

#include <set>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "lexer.h"

namespace duet {
namespace {

using internal::Token;
using internal::TokenKind;

constexpr absl::string_view kExpectedPayloadUrl = "type.duet/expected_tokens";
// Nesting beyond this depth is rejected rather than risking the stack.
constexpr int kMaxDepth = 256;

std::string Describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kIdent:
      return absl::StrCat("identifier '", token.text, "'");
    case TokenKind::kNumber:
      return absl::StrCat("number '", token.text, "'");
    default:
      return absl::StrCat("'", token.text, "'");
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  absl::StatusOr<ExprPtr> Program() {
    absl::StatusOr<ExprPtr> e = Expression();
    if (!e.ok()) return e.status();
    if (absl::Status s = ExpectEnd(); !s.ok()) return s;
    return e;
  }

  absl::StatusOr<Ty> TypeOnly() {
    absl::StatusOr<Ty> t = Type();
    if (!t.ok()) return t.status();
    if (absl::Status s = ExpectEnd(); !s.ok()) return s;
    return t;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }
  // Keywords and punctuation are matched by text.
  bool At(absl::string_view text) const {
    const Token& t = Peek();
    return (t.kind == TokenKind::kKeyword || t.kind == TokenKind::kPunct) &&
           t.text == text;
  }

  absl::Status Error(std::set<std::string> expected) const {
    const Token& t = Peek();
    std::string quoted;
    for (const std::string& e : expected) {
      if (!quoted.empty()) quoted += ", ";
      quoted += e;
    }
    absl::Status status = MakeError(
        ErrorKind::kParseError,
        absl::StrCat("expected ",
                     expected.size() == 1 ? "" : "one of ", quoted,
                     "; found ", Describe(t)),
        t.location);
    status.SetPayload(kExpectedPayloadUrl,
                      absl::Cord(absl::StrJoin(expected, "\n")));
    return status;
  }

  absl::Status Expect(absl::string_view text) {
    if (!At(text)) return Error({absl::StrCat("'", text, "'")});
    Next();
    return absl::OkStatus();
  }

  absl::Status ExpectEnd() const {
    if (Peek().kind != TokenKind::kEnd) return Error({"end of input"});
    return absl::OkStatus();
  }

  absl::StatusOr<std::string> Ident() {
    if (Peek().kind != TokenKind::kIdent) return Error({"identifier"});
    return Next().text;
  }

  absl::StatusOr<Decimal> DecimalLit() {
    if (Peek().kind != TokenKind::kNumber) return Error({"decimal"});
    return Decimal::Parse(Next().text);
  }

  absl::StatusOr<ExprPtr> Expression() {
    if (++depth_ > kMaxDepth) {
      return MakeError(ErrorKind::kParseError, "expression nested too deeply",
                       Peek().location);
    }
    absl::StatusOr<ExprPtr> e = ExpressionInner();
    --depth_;
    return e;
  }

  absl::StatusOr<ExprPtr> ExpressionInner() {
    SourceLocation loc = Peek().location;
    if (At("plam")) {
      Next();
      if (auto s = Expect("."); !s.ok()) return s;
      absl::StatusOr<std::string> param = Ident();
      if (!param.ok()) return param.status();
      if (auto s = Expect(":"); !s.ok()) return s;
      absl::StatusOr<Ty> ty = Type();
      if (!ty.ok()) return ty.status();
      if (auto s = Expect("=>"); !s.ok()) return s;
      absl::StatusOr<ExprPtr> body = Expression();
      if (!body.ok()) return body.status();
      return Located(PLamExpr{*std::move(param), *std::move(ty),
                              *std::move(body)},
                     loc);
    }
    if (At("let")) {
      Next();
      absl::StatusOr<std::string> name = Ident();
      if (!name.ok()) return name.status();
      if (auto s = Expect("="); !s.ok()) return s;
      absl::StatusOr<ExprPtr> bound = Expression();
      if (!bound.ok()) return bound.status();
      if (auto s = Expect("in"); !s.ok()) return s;
      absl::StatusOr<ExprPtr> body = Expression();
      if (!body.ok()) return body.status();
      return Located(
          LetExpr{*std::move(name), *std::move(bound), *std::move(body)}, loc);
    }
    if (At("gauss") || At("laplace")) {
      bool gauss = At("gauss");
      Next();
      if (auto s = Expect("["); !s.ok()) return s;
      absl::StatusOr<ExprPtr> sens = RExp();
      if (!sens.ok()) return sens.status();
      if (auto s = Expect(","); !s.ok()) return s;
      absl::StatusOr<ExprPtr> eps = RExp();
      if (!eps.ok()) return eps.status();
      absl::StatusOr<ExprPtr> delta;
      if (gauss) {
        if (auto s = Expect(","); !s.ok()) return s;
        delta = RExp();
        if (!delta.ok()) return delta.status();
      }
      if (auto s = Expect("]"); !s.ok()) return s;
      absl::StatusOr<std::vector<std::string>> vars = Idents();
      if (!vars.ok()) return vars.status();
      if (auto s = Expect("{"); !s.ok()) return s;
      absl::StatusOr<ExprPtr> body = Expression();
      if (!body.ok()) return body.status();
      if (auto s = Expect("}"); !s.ok()) return s;
      if (gauss) {
        return Located(GaussExpr{*std::move(sens), *std::move(eps),
                                 *std::move(delta), *std::move(vars),
                                 *std::move(body)},
                       loc);
      }
      return Located(LaplaceExpr{*std::move(sens), *std::move(eps),
                                 *std::move(vars), *std::move(body)},
                     loc);
    }
    if (At("rows") || At("real")) {
      bool rows = At("rows");
      Next();
      absl::StatusOr<ExprPtr> operand = Atom();
      if (!operand.ok()) return operand.status();
      if (rows) return Located(RowsExpr{*std::move(operand)}, loc);
      return Located(RealOfExpr{*std::move(operand)}, loc);
    }
    if (Peek().kind == TokenKind::kIdent || At("R+") || At("(")) {
      return Atom();
    }
    return Error({"'plam'", "'let'", "'gauss'", "'laplace'", "'rows'",
                  "'real'", "identifier", "'R+'", "'('"});
  }

  absl::StatusOr<ExprPtr> Atom() {
    if (At("(")) {
      Next();
      absl::StatusOr<ExprPtr> inner = Expression();
      if (!inner.ok()) return inner.status();
      if (auto s = Expect(")"); !s.ok()) return s;
      return inner;
    }
    if (Peek().kind == TokenKind::kIdent || At("R+")) return RExp();
    return Error({"identifier", "'R+'", "'('"});
  }

  absl::StatusOr<ExprPtr> RExp() {
    SourceLocation loc = Peek().location;
    if (Peek().kind == TokenKind::kIdent) {
      return Located(VarExpr{Next().text}, loc);
    }
    if (At("R+")) {
      Next();
      if (auto s = Expect("["); !s.ok()) return s;
      absl::StatusOr<Decimal> value = DecimalLit();
      if (!value.ok()) return value.status();
      if (auto s = Expect("]"); !s.ok()) return s;
      return Located(RLitExpr{*std::move(value)}, loc);
    }
    return Error({"identifier", "'R+'"});
  }

  absl::StatusOr<std::vector<std::string>> Idents() {
    if (auto s = Expect("<"); !s.ok()) return s;
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (true) {
      SourceLocation loc = Peek().location;
      absl::StatusOr<std::string> name = Ident();
      if (!name.ok()) return name.status();
      if (!seen.insert(*name).second) {
        return MakeError(ErrorKind::kParseError,
                         absl::StrCat("duplicate variable '", *name,
                                      "' in mechanism variable list"),
                         loc);
      }
      names.push_back(*std::move(name));
      if (At(">")) break;
      if (!At(",")) return Error({"','", "'>'"});
      Next();
    }
    Next();
    return names;
  }

  absl::StatusOr<Ty> Type() {
    if (At("R")) {
      Next();
      return Ty::Real();
    }
    if (At("dR")) {
      Next();
      return Ty::DReal();
    }
    if (At("R+")) {
      Next();
      if (auto s = Expect("["); !s.ok()) return s;
      absl::StatusOr<Decimal> value = DecimalLit();
      if (!value.ok()) return value.status();
      if (auto s = Expect("]"); !s.ok()) return s;
      return Ty::RPlus(*std::move(value));
    }
    if (At("M")) return MatrixType();
    return Error({"'R'", "'dR'", "'R+'", "'M'"});
  }

  absl::StatusOr<Ty> MatrixType() {
    Next();
    for (absl::string_view t : {"[", "L1", ",", "U", "|"}) {
      if (auto s = Expect(t); !s.ok()) return s;
    }
    std::optional<uint64_t> rows;
    if (At("star")) {
      Next();
    } else if (Peek().kind == TokenKind::kNumber && !Peek().has_dot) {
      uint64_t n = 0;
      if (!absl::SimpleAtoi(Peek().text, &n)) {
        return MakeError(ErrorKind::kParseError, "row count out of range",
                         Peek().location);
      }
      Next();
      rows = n;
    } else {
      return Error({"'star'", "natural number"});
    }
    if (auto s = Expect(","); !s.ok()) return s;
    if (At("[")) {
      return MakeError(ErrorKind::kParseError,
                       "matrix schema must have at least one column",
                       Peek().location);
    }
    std::vector<ScalarTy> schema;
    while (true) {
      if (At("R")) {
        schema.push_back(ScalarTy::kReal);
      } else if (At("dR")) {
        schema.push_back(ScalarTy::kDReal);
      } else {
        return Error({"'R'", "'dR'"});
      }
      Next();
      if (auto s = Expect("::"); !s.ok()) return s;
      if (At("[")) {
        Next();
        if (auto s = Expect("]"); !s.ok()) return s;
        break;
      }
    }
    if (auto s = Expect("]"); !s.ok()) return s;
    return Ty::Matrix(rows, std::move(schema));
  }

  static ExprPtr Located(Expr::Node node, SourceLocation loc) {
    return std::make_shared<const Expr>(std::move(node), loc);
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

absl::StatusOr<ExprPtr> Parse(absl::string_view source) {
  absl::StatusOr<std::vector<Token>> tokens = internal::Tokenize(source);
  if (!tokens.ok()) return tokens.status();
  return Parser(*std::move(tokens)).Program();
}

absl::StatusOr<Ty> ParseType(absl::string_view source) {
  absl::StatusOr<std::vector<Token>> tokens = internal::Tokenize(source);
  if (!tokens.ok()) return tokens.status();
  return Parser(*std::move(tokens)).TypeOnly();
}

std::vector<std::string> ExpectedTokens(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kExpectedPayloadUrl);
  if (!payload.has_value()) return {};
  return absl::StrSplit(std::string(*payload), '\n', absl::SkipEmpty());
}

}  // namespace duet

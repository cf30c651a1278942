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

#include "duet/lang/printer.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace duet {
namespace {

std::string RenderScalar(ScalarTy t) {
  return t == ScalarTy::kReal ? "R" : "dR";
}

// Operands of `rows`/`real` are atoms; anything else gets parentheses.
std::string RenderAtom(const Expr& e) {
  if (e.As<VarExpr>() != nullptr || e.As<RLitExpr>() != nullptr) {
    return Render(e);
  }
  return absl::StrCat("(", Render(e), ")");
}

std::string RenderBound(const Expr& e) {
  if (e.As<LetExpr>() != nullptr || e.As<PLamExpr>() != nullptr) {
    return absl::StrCat("(", Render(e), ")");
  }
  return Render(e);
}

struct ExprPrinter {
  std::string operator()(const VarExpr& n) const { return n.name; }
  std::string operator()(const RLitExpr& n) const {
    return absl::StrCat("R+[", n.value.ToString(), "]");
  }
  std::string operator()(const LetExpr& n) const {
    return absl::StrCat("let ", n.name, " = ", RenderBound(*n.bound), " in ",
                        Render(*n.body));
  }
  std::string operator()(const PLamExpr& n) const {
    return absl::StrCat("plam . ", n.param, " : ", RenderType(n.param_type),
                        " => ", Render(*n.body));
  }
  std::string operator()(const GaussExpr& n) const {
    return absl::StrCat("gauss[", Render(*n.sensitivity), ", ",
                        Render(*n.epsilon), ", ", Render(*n.delta), "] <",
                        absl::StrJoin(n.vars, ", "), "> { ", Render(*n.body),
                        " }");
  }
  std::string operator()(const LaplaceExpr& n) const {
    return absl::StrCat("laplace[", Render(*n.sensitivity), ", ",
                        Render(*n.epsilon), "] <", absl::StrJoin(n.vars, ", "),
                        "> { ", Render(*n.body), " }");
  }
  std::string operator()(const RowsExpr& n) const {
    return absl::StrCat("rows ", RenderAtom(*n.matrix));
  }
  std::string operator()(const RealOfExpr& n) const {
    return absl::StrCat("real ", RenderAtom(*n.operand));
  }
};

struct TyPrinter {
  std::string operator()(const RealTy&) const { return "R"; }
  std::string operator()(const DRealTy&) const { return "dR"; }
  std::string operator()(const RPlusTy& t) const {
    return absl::StrCat("R+[", t.value.ToString(), "]");
  }
  std::string operator()(const MatrixTy& t) const {
    std::string schema;
    for (ScalarTy s : t.schema) absl::StrAppend(&schema, RenderScalar(s), "::");
    return absl::StrCat("M [L1,U | ",
                        t.rows.has_value() ? absl::StrCat(*t.rows) : "star",
                        ", ", schema, "[]]");
  }
  std::string operator()(const PrivFnTy& t) const {
    return absl::StrCat(RenderType(*t.arg), "@<", t.cost.epsilon.ToString(),
                        ", ", t.cost.delta.ToString(), "> => ",
                        RenderType(*t.ret));
  }
};

}  // namespace

std::string Render(const Expr& e) { return std::visit(ExprPrinter{}, e.node()); }

std::string RenderType(const Ty& t) { return std::visit(TyPrinter{}, t.node()); }

}  // namespace duet

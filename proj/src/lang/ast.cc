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

#include "duet/lang/ast.h"

#include <utility>

namespace duet {

Ty Ty::Matrix(std::optional<uint64_t> rows, std::vector<ScalarTy> schema) {
  return Ty(MatrixTy{MatrixMetric::kL1, MatrixClip::kUnbounded, rows,
                     std::move(schema)});
}

Ty Ty::PrivFn(Ty arg, PrivCost cost, Ty ret) {
  return Ty(PrivFnTy{std::make_shared<const Ty>(std::move(arg)),
                     std::move(cost),
                     std::make_shared<const Ty>(std::move(ret))});
}

ExprPtr Expr::Var(std::string name) {
  return std::make_shared<const Expr>(VarExpr{std::move(name)});
}
ExprPtr Expr::RLit(Decimal value) {
  return std::make_shared<const Expr>(RLitExpr{std::move(value)});
}
ExprPtr Expr::Let(std::string name, ExprPtr bound, ExprPtr body) {
  return std::make_shared<const Expr>(
      LetExpr{std::move(name), std::move(bound), std::move(body)});
}
ExprPtr Expr::PLam(std::string param, Ty param_type, ExprPtr body) {
  return std::make_shared<const Expr>(
      PLamExpr{std::move(param), std::move(param_type), std::move(body)});
}
ExprPtr Expr::Gauss(ExprPtr sensitivity, ExprPtr epsilon, ExprPtr delta,
                    std::vector<std::string> vars, ExprPtr body) {
  return std::make_shared<const Expr>(
      GaussExpr{std::move(sensitivity), std::move(epsilon), std::move(delta),
                std::move(vars), std::move(body)});
}
ExprPtr Expr::Laplace(ExprPtr sensitivity, ExprPtr epsilon,
                      std::vector<std::string> vars, ExprPtr body) {
  return std::make_shared<const Expr>(LaplaceExpr{
      std::move(sensitivity), std::move(epsilon), std::move(vars),
      std::move(body)});
}
ExprPtr Expr::Rows(ExprPtr matrix) {
  return std::make_shared<const Expr>(RowsExpr{std::move(matrix)});
}
ExprPtr Expr::RealOf(ExprPtr operand) {
  return std::make_shared<const Expr>(RealOfExpr{std::move(operand)});
}

bool ExprEquals(const ExprPtr& a, const ExprPtr& b) {
  if (a == nullptr || b == nullptr) return a == b;
  return *a == *b;
}

namespace {

struct EqualsVisitor {
  const Expr::Node& other;

  bool operator()(const VarExpr& a) const {
    auto* b = std::get_if<VarExpr>(&other);
    return b != nullptr && a.name == b->name;
  }
  bool operator()(const RLitExpr& a) const {
    auto* b = std::get_if<RLitExpr>(&other);
    return b != nullptr && a.value == b->value &&
           a.value.scale() == b->value.scale();
  }
  bool operator()(const LetExpr& a) const {
    auto* b = std::get_if<LetExpr>(&other);
    return b != nullptr && a.name == b->name && ExprEquals(a.bound, b->bound) &&
           ExprEquals(a.body, b->body);
  }
  bool operator()(const PLamExpr& a) const {
    auto* b = std::get_if<PLamExpr>(&other);
    return b != nullptr && a.param == b->param &&
           a.param_type == b->param_type && ExprEquals(a.body, b->body);
  }
  bool operator()(const GaussExpr& a) const {
    auto* b = std::get_if<GaussExpr>(&other);
    return b != nullptr && ExprEquals(a.sensitivity, b->sensitivity) &&
           ExprEquals(a.epsilon, b->epsilon) && ExprEquals(a.delta, b->delta) &&
           a.vars == b->vars && ExprEquals(a.body, b->body);
  }
  bool operator()(const LaplaceExpr& a) const {
    auto* b = std::get_if<LaplaceExpr>(&other);
    return b != nullptr && ExprEquals(a.sensitivity, b->sensitivity) &&
           ExprEquals(a.epsilon, b->epsilon) && a.vars == b->vars &&
           ExprEquals(a.body, b->body);
  }
  bool operator()(const RowsExpr& a) const {
    auto* b = std::get_if<RowsExpr>(&other);
    return b != nullptr && ExprEquals(a.matrix, b->matrix);
  }
  bool operator()(const RealOfExpr& a) const {
    auto* b = std::get_if<RealOfExpr>(&other);
    return b != nullptr && ExprEquals(a.operand, b->operand);
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  return std::visit(EqualsVisitor{b.node()}, a.node());
}

int CountMechanisms(const Expr& e) {
  struct Counter {
    int operator()(const VarExpr&) const { return 0; }
    int operator()(const RLitExpr&) const { return 0; }
    int operator()(const LetExpr& n) const {
      return CountMechanisms(*n.bound) + CountMechanisms(*n.body);
    }
    int operator()(const PLamExpr& n) const { return CountMechanisms(*n.body); }
    int operator()(const GaussExpr& n) const {
      return 1 + CountMechanisms(*n.body);
    }
    int operator()(const LaplaceExpr& n) const {
      return 1 + CountMechanisms(*n.body);
    }
    int operator()(const RowsExpr& n) const {
      return CountMechanisms(*n.matrix);
    }
    int operator()(const RealOfExpr& n) const {
      return CountMechanisms(*n.operand);
    }
  };
  return std::visit(Counter{}, e.node());
}

}  // namespace duet

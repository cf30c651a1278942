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

#ifndef DUET_LANG_AST_H_
#define DUET_LANG_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "duet/common/decimal.h"
#include "duet/common/error.h"
#include "duet/common/privacy_cost.h"

namespace duet {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

// Column types a matrix schema may contain.
enum class ScalarTy { kReal, kDReal };

// Only the L1 row metric (number of differing rows) is supported.
enum class MatrixMetric { kL1 };
// Only unbounded ("U") matrices are supported.
enum class MatrixClip { kUnbounded };

class Ty;

struct RealTy {
  friend bool operator==(const RealTy&, const RealTy&) = default;
};
// Real number under the discrete metric: distance 0 if equal, 1 otherwise.
struct DRealTy {
  friend bool operator==(const DRealTy&, const DRealTy&) = default;
};
// A statically known, publicly known non-negative real.
struct RPlusTy {
  Decimal value;
  friend bool operator==(const RPlusTy&, const RPlusTy&) = default;
};
struct MatrixTy {
  MatrixMetric metric = MatrixMetric::kL1;
  MatrixClip clip = MatrixClip::kUnbounded;
  // nullopt means the row count is not statically known ("star").
  std::optional<uint64_t> rows;
  std::vector<ScalarTy> schema;
  friend bool operator==(const MatrixTy&, const MatrixTy&) = default;
};
// A privacy function: applying it to an argument at distance 1 costs `cost`.
struct PrivFnTy {
  std::shared_ptr<const Ty> arg;
  PrivCost cost;
  std::shared_ptr<const Ty> ret;
  friend bool operator==(const PrivFnTy& a, const PrivFnTy& b);
};

class Ty {
 public:
  using Node = std::variant<RealTy, DRealTy, RPlusTy, MatrixTy, PrivFnTy>;

  Ty() : node_(RealTy{}) {}
  Ty(Node node) : node_(std::move(node)) {}  // NOLINT

  static Ty Real() { return Ty(RealTy{}); }
  static Ty DReal() { return Ty(DRealTy{}); }
  static Ty RPlus(Decimal value) { return Ty(RPlusTy{std::move(value)}); }
  static Ty Matrix(std::optional<uint64_t> rows, std::vector<ScalarTy> schema);
  static Ty PrivFn(Ty arg, PrivCost cost, Ty ret);

  const Node& node() const { return node_; }
  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }
  template <typename T>
  bool Is() const {
    return std::holds_alternative<T>(node_);
  }

  friend bool operator==(const Ty& a, const Ty& b) {
    return a.node_ == b.node_;
  }

 private:
  Node node_;
};

inline bool operator==(const PrivFnTy& a, const PrivFnTy& b) {
  return *a.arg == *b.arg && a.cost == b.cost && *a.ret == *b.ret;
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

class Expr;
// Expressions are immutable and shared; closures capture bodies by pointer.
using ExprPtr = std::shared_ptr<const Expr>;

struct VarExpr {
  std::string name;
};
struct RLitExpr {
  Decimal value;
};
struct LetExpr {
  std::string name;
  ExprPtr bound;
  ExprPtr body;
};
struct PLamExpr {
  std::string param;
  Ty param_type;
  ExprPtr body;
};
// `sensitivity`, `epsilon` and `delta` are each a RLitExpr or a VarExpr.
struct GaussExpr {
  ExprPtr sensitivity;
  ExprPtr epsilon;
  ExprPtr delta;
  std::vector<std::string> vars;
  ExprPtr body;
};
struct LaplaceExpr {
  ExprPtr sensitivity;
  ExprPtr epsilon;
  std::vector<std::string> vars;
  ExprPtr body;
};
struct RowsExpr {
  ExprPtr matrix;
};
struct RealOfExpr {
  ExprPtr operand;
};

class Expr {
 public:
  using Node = std::variant<VarExpr, RLitExpr, LetExpr, PLamExpr, GaussExpr,
                            LaplaceExpr, RowsExpr, RealOfExpr>;

  explicit Expr(Node node, SourceLocation location = {})
      : node_(std::move(node)), location_(location) {}

  static ExprPtr Var(std::string name);
  static ExprPtr RLit(Decimal value);
  static ExprPtr Let(std::string name, ExprPtr bound, ExprPtr body);
  static ExprPtr PLam(std::string param, Ty param_type, ExprPtr body);
  static ExprPtr Gauss(ExprPtr sensitivity, ExprPtr epsilon, ExprPtr delta,
                       std::vector<std::string> vars, ExprPtr body);
  static ExprPtr Laplace(ExprPtr sensitivity, ExprPtr epsilon,
                         std::vector<std::string> vars, ExprPtr body);
  static ExprPtr Rows(ExprPtr matrix);
  static ExprPtr RealOf(ExprPtr operand);

  const Node& node() const { return node_; }
  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }
  // Position of the first token; {0, 0} for synthesized nodes.
  SourceLocation location() const { return location_; }

 private:
  Node node_;
  SourceLocation location_;
};

// Structural equality, ignoring source locations.
bool operator==(const Expr& a, const Expr& b);
bool ExprEquals(const ExprPtr& a, const ExprPtr& b);

// Number of gauss/laplace nodes in `e`.
int CountMechanisms(const Expr& e);

}  // namespace duet

#endif  // DUET_LANG_AST_H_

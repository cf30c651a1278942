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

#ifndef DUET_INTERP_INTERPRETER_H_
#define DUET_INTERP_INTERPRETER_H_

#include <map>
#include <memory>
#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/interp/database.h"
#include "duet/lang/ast.h"
#include "duet/mech/mechanisms.h"

namespace duet {

class Value;
using ValueEnv = std::map<std::string, Value>;

struct Closure {
  std::string param;
  Ty param_type;
  ExprPtr body;
  std::shared_ptr<const ValueEnv> env;
};

// Runtime values. `Static` is a statically known literal, kept exact so that
// mechanism parameters are calibrated from the decimals that were certified.
class Value {
 public:
  using Node = std::variant<double, Decimal, std::shared_ptr<const Database>,
                            Closure>;

  Value(Node node) : node_(std::move(node)) {}  // NOLINT
  static Value Num(double v) { return Value(Node(v)); }
  static Value Static(Decimal v) { return Value(Node(std::move(v))); }
  static Value Mat(std::shared_ptr<const Database> db) {
    return Value(Node(std::move(db)));
  }

  const Node& node() const { return node_; }
  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }
  // Numeric view of Num and Static values.
  std::optional<double> AsNumber() const;

 private:
  Node node_;
};

// Call-by-value evaluation. Each gauss/laplace node draws exactly one sample
// from `noise`. kEvalError only on states the typechecker rules out.
absl::StatusOr<Value> Evaluate(const Expr& e, const ValueEnv& env,
                               NoiseSource& noise);

// Applies a closure produced by a validated query to the database.
absl::StatusOr<double> ApplyQuery(const Value& fn,
                                  std::shared_ptr<const Database> db,
                                  NoiseSource& noise);

// 12 significant digits, e.g. "100.352718293".
std::string FormatResult(double value);

}  // namespace duet

#endif  // DUET_INTERP_INTERPRETER_H_

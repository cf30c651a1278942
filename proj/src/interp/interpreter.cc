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

#include "duet/interp/interpreter.h"

#include <cmath>
#include <cstdio>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"
#include "duet/lang/printer.h"

namespace duet {

std::optional<double> Value::AsNumber() const {
  if (const double* d = As<double>()) return *d;
  if (const Decimal* d = As<Decimal>()) return d->ToDouble();
  return std::nullopt;
}

namespace {

absl::Status EvalError(absl::string_view message) {
  return MakeError(ErrorKind::kEvalError, message);
}

class Interpreter {
 public:
  explicit Interpreter(NoiseSource& noise) : noise_(noise) {}

  absl::StatusOr<Value> Eval(const Expr& e, const ValueEnv& env) {
    return std::visit([&](const auto& n) { return EvalNode(n, env); },
                      e.node());
  }

 private:
  absl::StatusOr<Value> EvalNode(const VarExpr& n, const ValueEnv& env) {
    auto it = env.find(n.name);
    if (it == env.end()) {
      return EvalError(absl::StrCat("unbound variable '", n.name, "'"));
    }
    return it->second;
  }

  absl::StatusOr<Value> EvalNode(const RLitExpr& n, const ValueEnv&) {
    return Value::Static(n.value);
  }

  absl::StatusOr<Value> EvalNode(const LetExpr& n, const ValueEnv& env) {
    absl::StatusOr<Value> bound = Eval(*n.bound, env);
    if (!bound.ok()) return bound.status();
    ValueEnv inner = env;
    inner.insert_or_assign(n.name, *std::move(bound));
    return Eval(*n.body, inner);
  }

  absl::StatusOr<Value> EvalNode(const PLamExpr& n, const ValueEnv& env) {
    return Value(Closure{n.param, n.param_type, n.body,
                         std::make_shared<const ValueEnv>(env)});
  }

  absl::StatusOr<Value> EvalNode(const RowsExpr& n, const ValueEnv& env) {
    absl::StatusOr<Value> m = Eval(*n.matrix, env);
    if (!m.ok()) return m.status();
    const auto* db = m->As<std::shared_ptr<const Database>>();
    if (db == nullptr) return EvalError("rows applied to a non-matrix");
    return Value::Num(static_cast<double>((*db)->size()));
  }

  absl::StatusOr<Value> EvalNode(const RealOfExpr& n, const ValueEnv& env) {
    absl::StatusOr<Value> v = Eval(*n.operand, env);
    if (!v.ok()) return v.status();
    std::optional<double> x = v->AsNumber();
    if (!x.has_value()) return EvalError("real applied to a non-number");
    return Value::Num(*x);
  }

  absl::StatusOr<Decimal> StaticParam(const Expr& e, const ValueEnv& env) {
    absl::StatusOr<Value> v = Eval(e, env);
    if (!v.ok()) return v.status();
    const Decimal* d = v->As<Decimal>();
    if (d == nullptr) {
      return EvalError("mechanism parameter is not statically known");
    }
    return *d;
  }

  absl::StatusOr<double> NumericBody(const Expr& body, const ValueEnv& env) {
    absl::StatusOr<Value> v = Eval(body, env);
    if (!v.ok()) return v.status();
    std::optional<double> x = v->AsNumber();
    if (!x.has_value() || !std::isfinite(*x)) {
      return EvalError("mechanism body did not produce a finite number");
    }
    return *x;
  }

  absl::StatusOr<Value> EvalNode(const GaussExpr& n, const ValueEnv& env) {
    absl::StatusOr<Decimal> sens = StaticParam(*n.sensitivity, env);
    if (!sens.ok()) return sens.status();
    absl::StatusOr<Decimal> eps = StaticParam(*n.epsilon, env);
    if (!eps.ok()) return eps.status();
    absl::StatusOr<Decimal> delta = StaticParam(*n.delta, env);
    if (!delta.ok()) return delta.status();
    absl::StatusOr<double> sigma = GaussSigma(*sens, *eps, *delta);
    if (!sigma.ok()) return EvalError(sigma.status().message());
    absl::StatusOr<double> x = NumericBody(*n.body, env);
    if (!x.ok()) return x.status();
    return Finite(*x + noise_.Gauss(*sigma));
  }

  absl::StatusOr<Value> EvalNode(const LaplaceExpr& n, const ValueEnv& env) {
    absl::StatusOr<Decimal> sens = StaticParam(*n.sensitivity, env);
    if (!sens.ok()) return sens.status();
    absl::StatusOr<Decimal> eps = StaticParam(*n.epsilon, env);
    if (!eps.ok()) return eps.status();
    absl::StatusOr<double> scale = LaplaceScale(*sens, *eps);
    if (!scale.ok()) return EvalError(scale.status().message());
    absl::StatusOr<double> x = NumericBody(*n.body, env);
    if (!x.ok()) return x.status();
    return Finite(*x + noise_.Laplace(*scale));
  }

  static absl::StatusOr<Value> Finite(double x) {
    if (!std::isfinite(x)) return EvalError("non-finite mechanism output");
    return Value::Num(x);
  }

  NoiseSource& noise_;
};

}  // namespace

absl::StatusOr<Value> Evaluate(const Expr& e, const ValueEnv& env,
                               NoiseSource& noise) {
  return Interpreter(noise).Eval(e, env);
}

absl::StatusOr<double> ApplyQuery(const Value& fn,
                                  std::shared_ptr<const Database> db,
                                  NoiseSource& noise) {
  const Closure* closure = fn.As<Closure>();
  if (closure == nullptr) return EvalError("query is not a function");
  if (db == nullptr || !(db->schema() == closure->param_type)) {
    return EvalError(absl::StrCat(
        "database schema ", db ? RenderType(db->schema()) : "<none>",
        " does not match query argument type ",
        RenderType(closure->param_type)));
  }
  ValueEnv env = *closure->env;
  env.insert_or_assign(closure->param, Value::Mat(std::move(db)));
  absl::StatusOr<Value> result = Evaluate(*closure->body, env, noise);
  if (!result.ok()) return result.status();
  std::optional<double> x = result->AsNumber();
  if (!x.has_value() || !std::isfinite(*x)) {
    return EvalError("query did not produce a finite number");
  }
  return *x;
}

std::string FormatResult(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace duet

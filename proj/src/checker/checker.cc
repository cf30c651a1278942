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

#include "duet/checker/checker.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"
#include "duet/lang/printer.h"

namespace duet {
namespace {

struct Binding {
  Ty type;
  // Statically known constants and mechanism outputs are public: depending
  // on them costs nothing.
  bool is_public = false;
};
using Env = std::map<std::string, Binding>;

struct Judgment {
  Ty type;
  // True once a mechanism has run at this level; `privacy` is then
  // meaningful, otherwise `sens` is.
  bool is_private = false;
  SensMap sens;
  PrivMap privacy;
};

struct MechanismSite {
  bool gaussian = false;
  Decimal sensitivity;
  Decimal epsilon;
  Decimal delta;
  SourceLocation location;
};

absl::Status Fail(ErrorKind kind, const Expr& at, absl::string_view message) {
  if (at.location().line > 0) return MakeError(kind, message, at.location());
  return MakeError(kind, message);
}

// Sensitivity-level judgment promoted to privacy level: every non-public
// variable the result depends on is released without noise.
PrivMap Lift(const Judgment& j, const Env& env) {
  if (j.is_private) return j.privacy;
  PrivMap out;
  for (const auto& [name, s] : j.sens) {
    if (s.IsZero()) continue;
    auto it = env.find(name);
    if (it != env.end() && it->second.is_public) continue;
    out[name] = PrivCost::Infinite();
  }
  return out;
}

bool IsNumericScalar(const Ty& t) { return t.Is<RealTy>() || t.Is<RPlusTy>(); }

class Checker {
 public:
  absl::StatusOr<Judgment> Check(const Expr& e, const Env& env) {
    return std::visit([&](const auto& node) { return CheckNode(e, node, env); },
                      e.node());
  }

  const std::vector<MechanismSite>& sites() const { return sites_; }

 private:
  absl::StatusOr<Judgment> CheckNode(const Expr& e, const VarExpr& n,
                                     const Env& env) {
    auto it = env.find(n.name);
    if (it == env.end()) {
      return Fail(ErrorKind::kUnboundVariable, e,
                  absl::StrCat("unbound variable '", n.name, "'"));
    }
    Judgment j;
    j.type = it->second.type;
    j.sens[n.name] = ExtReal::One();
    return j;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr&, const RLitExpr& n,
                                     const Env&) {
    Judgment j;
    j.type = Ty::RPlus(n.value);
    return j;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const RowsExpr& n,
                                     const Env& env) {
    absl::StatusOr<Judgment> m = Check(*n.matrix, env);
    if (!m.ok()) return m.status();
    if (m->is_private || !m->type.Is<MatrixTy>()) {
      return Fail(ErrorKind::kTypeError, e,
                  absl::StrCat("rows expects a matrix, got ",
                               m->is_private ? "a mechanism result"
                                             : RenderType(m->type)));
    }
    // Under the L1 row metric the row count is 1-Lipschitz.
    m->type = Ty::DReal();
    return m;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const RealOfExpr& n,
                                     const Env& env) {
    absl::StatusOr<Judgment> x = Check(*n.operand, env);
    if (!x.ok()) return x.status();
    if (x->is_private || !x->type.Is<DRealTy>()) {
      return Fail(ErrorKind::kTypeError, e,
                  absl::StrCat("real expects dR, got ",
                               x->is_private ? "a mechanism result"
                                             : RenderType(x->type)));
    }
    x->type = Ty::Real();
    return x;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const LetExpr& n,
                                     const Env& env) {
    absl::StatusOr<Judgment> bound = Check(*n.bound, env);
    if (!bound.ok()) return bound.status();
    Env inner = env;
    inner[n.name] = Binding{bound->type,
                            bound->is_private || bound->type.Is<RPlusTy>()};
    absl::StatusOr<Judgment> body = Check(*n.body, inner);
    if (!body.ok()) return body.status();

    Judgment out;
    out.type = body->type;
    if (bound->is_private) {
      // Sequential composition. The bound result is public from here on,
      // but may only flow linearly into the rest of the program.
      if (!body->is_private) {
        auto it = body->sens.find(n.name);
        if (it != body->sens.end() && it->second > ExtReal::One()) {
          return Fail(ErrorKind::kTypeError, e,
                      absl::StrCat("mechanism result '", n.name,
                                   "' may only be used with sensitivity 1"));
        }
      }
      out.is_private = true;
      out.privacy = bound->privacy;
      PrivMap rest = Lift(*body, inner);
      rest.erase(n.name);
      for (const auto& [name, cost] : rest) out.privacy[name] += cost;
      return out;
    }

    ExtReal through = ExtReal::Zero();
    if (!body->is_private) {
      auto it = body->sens.find(n.name);
      if (it != body->sens.end()) through = it->second;
      out.sens = body->sens;
      out.sens.erase(n.name);
      for (const auto& [name, s] : bound->sens) {
        ExtReal scaled = through * s;
        if (!scaled.IsZero()) out.sens[name] = out.sens[name] + scaled;
      }
      return out;
    }

    // Privacy-level body over a sensitivity-level binding: the cost charged
    // to the bound name moves to whatever the bound expression reads.
    out.is_private = true;
    out.privacy = body->privacy;
    PrivCost moved;
    if (auto it = out.privacy.find(n.name); it != out.privacy.end()) {
      moved = it->second;
      out.privacy.erase(it);
    }
    if (moved.IsZero()) return out;
    for (const auto& [name, s] : bound->sens) {
      if (s.IsZero()) continue;
      auto binding = env.find(name);
      if (binding != env.end() && binding->second.is_public) continue;
      if (s.IsInfinite() || !moved.IsFinite()) {
        out.privacy[name] = PrivCost::Infinite();
      } else if (s <= ExtReal::One()) {
        out.privacy[name] += moved;
      } else {
        return Fail(ErrorKind::kTypeError, e,
                    absl::StrCat("'", n.name, "' has sensitivity ",
                                 s.ToString(), " in '", name,
                                 "'; scaling a privacy cost is not supported"));
      }
    }
    return out;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const PLamExpr& n,
                                     const Env& env) {
    Env inner = env;
    inner[n.param] = Binding{n.param_type, n.param_type.Is<RPlusTy>()};
    absl::StatusOr<Judgment> body = Check(*n.body, inner);
    if (!body.ok()) return body.status();
    PrivMap costs = Lift(*body, inner);
    PrivCost param_cost;
    if (auto it = costs.find(n.param); it != costs.end()) {
      param_cost = it->second;
      costs.erase(it);
    }
    if (!param_cost.IsFinite()) {
      return Fail(ErrorKind::kInfiniteCost, e,
                  absl::StrCat("'", n.param,
                               "' is released without a mechanism; its "
                               "privacy cost is infinite"));
    }
    for (const auto& [name, cost] : costs) {
      if (!cost.IsZero()) {
        return Fail(ErrorKind::kTypeError, e,
                    absl::StrCat("privacy function must be closed, but it "
                                 "spends privacy on free variable '",
                                 name, "'"));
      }
    }
    Judgment out;
    out.type = Ty::PrivFn(n.param_type, param_cost, body->type);
    return out;
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const GaussExpr& n,
                                     const Env& env) {
    return CheckMechanism(e, /*gaussian=*/true, *n.sensitivity, *n.epsilon,
                          n.delta.get(), n.vars, *n.body, env);
  }

  absl::StatusOr<Judgment> CheckNode(const Expr& e, const LaplaceExpr& n,
                                     const Env& env) {
    return CheckMechanism(e, /*gaussian=*/false, *n.sensitivity, *n.epsilon,
                          nullptr, n.vars, *n.body, env);
  }

  absl::StatusOr<Decimal> Static(const Expr& r, const Env& env,
                                 absl::string_view what) {
    if (const auto* lit = r.As<RLitExpr>()) return lit->value;
    const auto* var = r.As<VarExpr>();
    if (var == nullptr) {
      return Fail(ErrorKind::kTypeError, r,
                  absl::StrCat(what, " must be R+[c] or a variable"));
    }
    auto it = env.find(var->name);
    if (it == env.end()) {
      return Fail(ErrorKind::kUnboundVariable, r,
                  absl::StrCat("unbound variable '", var->name, "'"));
    }
    if (const auto* rplus = it->second.type.As<RPlusTy>()) return rplus->value;
    return Fail(ErrorKind::kNonConstantCost, r,
                absl::StrCat(what, " '", var->name,
                             "' is not statically known (type ",
                             RenderType(it->second.type), ")"));
  }

  absl::StatusOr<Judgment> CheckMechanism(
      const Expr& e, bool gaussian, const Expr& sens_expr,
      const Expr& eps_expr, const Expr* delta_expr,
      const std::vector<std::string>& vars, const Expr& body_expr,
      const Env& env) {
    MechanismSite site;
    site.gaussian = gaussian;
    site.location = e.location();
    absl::StatusOr<Decimal> sens = Static(sens_expr, env, "sensitivity");
    if (!sens.ok()) return sens.status();
    absl::StatusOr<Decimal> eps = Static(eps_expr, env, "epsilon");
    if (!eps.ok()) return eps.status();
    site.sensitivity = *sens;
    site.epsilon = *eps;
    if (eps->IsZero()) {
      return Fail(ErrorKind::kTypeError, e, "epsilon must be positive");
    }
    if (delta_expr != nullptr) {
      absl::StatusOr<Decimal> delta = Static(*delta_expr, env, "delta");
      if (!delta.ok()) return delta.status();
      if (delta->IsZero() || *delta >= Decimal::FromInt(1)) {
        return Fail(ErrorKind::kTypeError, e,
                    "gauss requires 0 < delta < 1");
      }
      site.delta = *delta;
    }

    absl::StatusOr<Judgment> body = Check(body_expr, env);
    if (!body.ok()) return body.status();
    if (body->is_private) {
      return Fail(ErrorKind::kTypeError, body_expr,
                  "mechanism body must not itself run a mechanism");
    }
    if (!IsNumericScalar(body->type)) {
      return Fail(ErrorKind::kTypeError, body_expr,
                  absl::StrCat("mechanism body must have type R, got ",
                               RenderType(body->type)));
    }

    Judgment out;
    out.type = Ty::Real();
    out.is_private = true;
    PrivCost cost{ExtReal(site.epsilon), ExtReal(site.delta)};
    for (const std::string& x : vars) {
      if (env.find(x) == env.end()) {
        return Fail(ErrorKind::kUnboundVariable, e,
                    absl::StrCat("unbound variable '", x,
                                 "' in mechanism variable list"));
      }
      auto it = body->sens.find(x);
      if (it != body->sens.end() && it->second > ExtReal(site.sensitivity)) {
        return Fail(ErrorKind::kSensitivityExceeded, e,
                    absl::StrCat("sensitivity of the body in '", x, "' is ",
                                 it->second.ToString(),
                                 ", which exceeds the declared bound ",
                                 site.sensitivity.ToString()));
      }
      out.privacy[x] = cost;
    }
    PrivMap leaked = Lift(*body, env);
    for (const auto& [name, c] : leaked) {
      if (out.privacy.count(name) == 0) out.privacy[name] = c;
    }
    sites_.push_back(std::move(site));
    return out;
  }

  std::vector<MechanismSite> sites_;
};

Env ToEnv(const TyEnv& env) {
  Env out;
  for (const auto& [name, ty] : env) {
    out[name] = Binding{ty, ty.Is<RPlusTy>()};
  }
  return out;
}

bool ContainsPrivacyConstruct(const Expr& e) {
  if (e.As<GaussExpr>() || e.As<LaplaceExpr>() || e.As<PLamExpr>()) {
    return true;
  }
  if (const auto* let = e.As<LetExpr>()) {
    return ContainsPrivacyConstruct(*let->bound) ||
           ContainsPrivacyConstruct(*let->body);
  }
  if (const auto* rows = e.As<RowsExpr>()) {
    return ContainsPrivacyConstruct(*rows->matrix);
  }
  if (const auto* real = e.As<RealOfExpr>()) {
    return ContainsPrivacyConstruct(*real->operand);
  }
  return false;
}

}  // namespace

absl::StatusOr<SensMap> SensitivityOf(const Expr& e, const TyEnv& env) {
  if (ContainsPrivacyConstruct(e)) {
    return Fail(ErrorKind::kTypeError, e,
                "sensitivity analysis applies only to expressions without "
                "gauss, laplace or plam");
  }
  Checker checker;
  absl::StatusOr<Judgment> j = checker.Check(e, ToEnv(env));
  if (!j.ok()) return j.status();
  SensMap out;
  for (const auto& [name, s] : j->sens) {
    if (!s.IsZero()) out[name] = s;
  }
  return out;
}

absl::StatusOr<Typing> Typecheck(const Expr& e, const TyEnv& env) {
  Checker checker;
  Env checker_env = ToEnv(env);
  absl::StatusOr<Judgment> j = checker.Check(e, checker_env);
  if (!j.ok()) return j.status();
  return Typing{j->type, Lift(*j, checker_env)};
}

absl::StatusOr<QueryCert> ValidateQuery(const Expr& e, const Ty& schema) {
  if (!schema.Is<MatrixTy>()) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     absl::StrCat("database schema must be a matrix type, got ",
                                  RenderType(schema)));
  }
  Checker checker;
  absl::StatusOr<Judgment> j = checker.Check(e, Env{});
  if (!j.ok()) return j.status();
  const PrivFnTy* fn = j->type.As<PrivFnTy>();
  if (j->is_private || fn == nullptr) {
    return MakeError(ErrorKind::kNotPrivFn,
                     absl::StrCat("a query must be a privacy function of the "
                                  "database; program has type ",
                                  j->is_private ? "R (already noised)"
                                                : RenderType(j->type)));
  }
  if (!(*fn->arg == schema)) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     absl::StrCat("query argument type ", RenderType(*fn->arg),
                                  " does not match the database schema ",
                                  RenderType(schema)));
  }
  if (!fn->cost.IsFinite()) {
    return MakeError(ErrorKind::kInfiniteCost, "query cost is infinite");
  }
  if (!fn->ret->Is<RealTy>()) {
    return MakeError(ErrorKind::kTypeError,
                     absl::StrCat("a query must return R, got ",
                                  RenderType(*fn->ret)));
  }
  for (const MechanismSite& site : checker.sites()) {
    if (site.gaussian && site.epsilon > Decimal::FromInt(1)) {
      return MakeError(ErrorKind::kTypeError,
                       absl::StrCat("gauss requires epsilon <= 1, got ",
                                    site.epsilon.ToString()),
                       site.location);
    }
  }
  return QueryCert{*fn->arg, *fn->ret, fn->cost};
}

}  // namespace duet

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

#ifndef DUET_CHECKER_CHECKER_H_
#define DUET_CHECKER_CHECKER_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "duet/common/privacy_cost.h"
#include "duet/lang/ast.h"

namespace duet {

// Typing environment for free variables.
using TyEnv = std::map<std::string, Ty>;

// Per-variable sensitivity of a pure (mechanism-free, lambda-free)
// expression. Fails with a type-error kind on unbound variables, ill-typed
// operands, or if `e` contains gauss/laplace/plam.
absl::StatusOr<SensMap> SensitivityOf(const Expr& e, const TyEnv& env);

struct Typing {
  Ty type;
  // Privacy cost charged to each free variable. A free variable the result
  // depends on outside every mechanism's variable list costs (inf, inf).
  PrivMap privacy;
};

// Static privacy typechecking. Sequencing two mechanisms with `let` adds
// their costs per variable; `plam . x : T => body` has type
// `T@<cost of x in body> => type of body` and requires every other free
// variable to cost (0, 0).
absl::StatusOr<Typing> Typecheck(const Expr& e, const TyEnv& env = {});

// A validated query: a closed privacy function over the database.
struct QueryCert {
  Ty arg_type;
  Ty ret_type;
  PrivCost cost;

  Ty FunctionType() const { return Ty::PrivFn(arg_type, cost, ret_type); }
};

// Accepts `e` iff it typechecks to `schema@<eps, delta> => R` with finite
// cost and no free variables. Rejections carry one of kNotPrivFn,
// kSchemaMismatch, kInfiniteCost, kNonConstantCost or a type-error kind.
//
// Also rejects gauss sites with epsilon > 1, which the Gaussian calibration
// used at run time does not cover.
absl::StatusOr<QueryCert> ValidateQuery(const Expr& e, const Ty& schema);

}  // namespace duet

#endif  // DUET_CHECKER_CHECKER_H_

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

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "duet/checker/checker.h"
#include "duet/interp/database.h"
#include "duet/interp/interpreter.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"
#include "query_gen.h"
#include "test_util.h"

namespace duet {
namespace {

Decimal D(const char* text) { return Unwrap(Decimal::Parse(text)); }
ExprPtr P(const std::string& text) { return Unwrap(Parse(text)); }
Ty PairsSchema() { return Unwrap(ParseType(kPairsSchema)); }

TyEnv WithDf() { return {{"df", PairsSchema()}}; }

TEST(SensitivityTest, RowsOfMatrixIsOneSensitive) {
  SensMap s = Unwrap(SensitivityOf(*P("rows df"), WithDf()));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s["df"], ExtReal::One());
}

TEST(SensitivityTest, LiteralDependsOnNothing) {
  EXPECT_TRUE(Unwrap(SensitivityOf(*P("R+[1.5]"), {})).empty());
}

TEST(SensitivityTest, LetChainMultipliesThrough) {
  SensMap s =
      Unwrap(SensitivityOf(*P("let y = x in real y"), {{"x", Ty::DReal()}}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s["x"], ExtReal::One());
}

TEST(SensitivityTest, RejectsPrivacyConstructsAndBadOperands) {
  EXPECT_THAT(SensitivityOf(*P("gauss[R+[1.0], R+[1.0], R+[0.1]] <x> { x }"),
                            {{"x", Ty::Real()}}),
              HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(SensitivityOf(*P("rows x"), {{"x", Ty::Real()}}),
              HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(SensitivityOf(*P("real x"), {{"x", Ty::Real()}}),
              HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(SensitivityOf(*P("rows nope"), {}),
              HasKind(ErrorKind::kUnboundVariable));
}

class ZeroNoise : public NoiseSource {
 public:
  double Laplace(double) override { return 0; }
  double Gauss(double) override { return 0; }
};

// Oracle: enumerate every database of up to four rows over a two-value
// domain, evaluate the expression on each, and check that outputs of
// databases at row distance d differ by at most sensitivity * d.
TEST(SensitivityTest, RowCountChainsAgreeWithEnumeration) {
  const std::vector<std::string> programs = {
      "real (rows df)",
      "let c = rows df in real c",
      "let c = rows df in let d = c in real d",
      "let m = df in real (rows m)",
  };
  std::vector<std::vector<Row>> dbs;
  std::vector<Row> values = {{D("1"), D("2")}, {D("3"), D("4")}};
  // Multisets encoded by (count of value 0, count of value 1).
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      std::vector<Row> rows(a, values[0]);
      rows.insert(rows.end(), b, values[1]);
      dbs.push_back(rows);
    }
  }
  for (const std::string& text : programs) {
    SCOPED_TRACE(text);
    ExprPtr e = P(text);
    ExtReal declared = Unwrap(SensitivityOf(*e, WithDf()))["df"];
    ASSERT_TRUE(declared.IsFinite());
    double bound = declared.value().ToDouble();
    std::vector<double> outputs;
    for (const auto& rows : dbs) {
      auto db = std::make_shared<Database>(PairsSchema());
      for (const Row& r : rows) DUET_ASSERT_OK(db->Append(r));
      ZeroNoise noise;
      Value v = Unwrap(Evaluate(*e, {{"df", Value::Mat(db)}}, noise));
      outputs.push_back(*v.AsNumber());
    }
    for (size_t i = 0; i < dbs.size(); ++i) {
      for (size_t j = 0; j < dbs.size(); ++j) {
        // L1 row distance between multisets: sum of count differences.
        int d = std::abs(int(i / 3) - int(j / 3)) + std::abs(int(i % 3) - int(j % 3));
        EXPECT_LE(std::abs(outputs[i] - outputs[j]), bound * d + 1e-12);
      }
    }
    EXPECT_EQ(declared, ExtReal::One());
  }
}

TEST(TypecheckGoldenTest, StandaloneGaussCostsItsParameters) {
  Typing t = Unwrap(Typecheck(*P(kStandaloneGauss), {{"x", Ty::Real()}}));
  EXPECT_EQ(RenderType(t.type), "R");
  ASSERT_EQ(t.privacy.size(), 1u);
  EXPECT_EQ(t.privacy["x"].epsilon.ToString(), "1.5");
  EXPECT_EQ(t.privacy["x"].delta.ToString(), "0.000001");
}

TEST(TypecheckGoldenTest, PrivacyFunctionType) {
  Typing t = Unwrap(Typecheck(*P(kPrivacyFunction)));
  EXPECT_EQ(RenderType(t.type), "R@<1.0, 0.001> => R");
  EXPECT_TRUE(t.privacy.empty());
}

TEST(TypecheckGoldenTest, CountingQueryType) {
  Typing t = Unwrap(Typecheck(*P(kCountingQuery)));
  EXPECT_EQ(RenderType(t.type), "M [L1,U | star, dR::dR::[]]@<1.0, 0.001> => R");
}

TEST(TypecheckTest, IdentityPrivacyFunctionLeaks) {
  EXPECT_THAT(Typecheck(*P("plam . x : R => x")),
              HasKind(ErrorKind::kInfiniteCost));
}

TEST(TypecheckTest, UnlistedFreeVariableCostsInfinity) {
  Typing t = Unwrap(Typecheck(
      *P("gauss[R+[1.0], R+[1.0], R+[0.001]] <x> { real (rows df) }"),
      {{"x", Ty::Real()}, {"df", PairsSchema()}}));
  EXPECT_EQ(t.privacy["x"], (PrivCost{ExtReal(D("1")), ExtReal(D("0.001"))}));
  EXPECT_EQ(t.privacy["df"], PrivCost::Infinite());
  ExprPtr as_query = P(absl::StrCat(
      "plam . x : ", kPairsSchema,
      " => gauss[R+[1.0], R+[1.0], R+[0.001]] <x> { real (rows df) }"));
  EXPECT_FALSE(ValidateQuery(*as_query, PairsSchema()).ok());
}

TEST(TypecheckTest, RejectsNonStaticParameters) {
  EXPECT_THAT(Typecheck(*P("gauss[R+[1.0], e, R+[0.001]] <x> { x }"),
                        {{"x", Ty::Real()}, {"e", Ty::Real()}}),
              HasKind(ErrorKind::kNonConstantCost));
  EXPECT_THAT(Typecheck(*P("gauss[R+[1.0], e, R+[0.001]] <x> { x }"),
                        {{"x", Ty::Real()}}),
              HasKind(ErrorKind::kUnboundVariable));
}

TEST(TypecheckTest, RejectsOutOfRangeParameters) {
  TyEnv env = {{"x", Ty::Real()}};
  EXPECT_THAT(Typecheck(*P("laplace[R+[1.0], R+[0]] <x> { x }"), env),
              HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(Typecheck(*P("gauss[R+[1.0], R+[1.0], R+[0]] <x> { x }"), env),
              HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(Typecheck(*P("gauss[R+[1.0], R+[1.0], R+[1.0]] <x> { x }"), env),
              HasKind(ErrorKind::kTypeError));
}

TEST(TypecheckTest, MechanismBodyMustBeNumeric) {
  EXPECT_THAT(
      Typecheck(*P("laplace[R+[1.0], R+[1.0]] <df> { rows df }"), WithDf()),
      HasKind(ErrorKind::kTypeError));
  EXPECT_THAT(Typecheck(*P("laplace[R+[1.0], R+[1.0]] <df> { df }"), WithDf()),
              HasKind(ErrorKind::kTypeError));
}

TEST(TypecheckTest, SensitivityBoundIsExact) {
  std::string q =
      "laplace[R+[0.99999], R+[1.0]] <df> { real (rows df) }";
  absl::StatusOr<Typing> t = Typecheck(*P(q), WithDf());
  EXPECT_THAT(t, HasKind(ErrorKind::kSensitivityExceeded));
  EXPECT_EQ(WireName(GetErrorKind(t.status())), "TypeError");
  DUET_EXPECT_OK(Typecheck(
      *P("laplace[R+[1.00000], R+[1.0]] <df> { real (rows df) }"), WithDf()));
}

TEST(TypecheckTest, LaplaceHasZeroDelta) {
  Typing t = Unwrap(Typecheck(
      *P(absl::StrCat("plam . df : ", kPairsSchema,
                      " => laplace[R+[1.0], R+[0.5]] <df> { real (rows df) }"))));
  const PrivFnTy* fn = t.type.As<PrivFnTy>();
  ASSERT_NE(fn, nullptr);
  EXPECT_EQ(fn->cost.epsilon.ToString(), "0.5");
  EXPECT_TRUE(fn->cost.delta.IsZero());
}

TEST(TypecheckTest, MechanismResultsArePublicDownstream) {
  // Releasing a noised result costs nothing more.
  Typing t = Unwrap(Typecheck(
      *P("let a = laplace[R+[1.0], R+[1.0]] <df> { real (rows df) } in a"),
      WithDf()));
  EXPECT_EQ(t.privacy["df"].epsilon.ToString(), "1.0");
  // Feeding it into a second mechanism charges only that mechanism.
  t = Unwrap(Typecheck(
      *P("let a = laplace[R+[1.0], R+[1.0]] <df> { real (rows df) } in "
         "laplace[R+[1.0], R+[0.5]] <df> { a }"),
      WithDf()));
  EXPECT_EQ(t.privacy["df"].epsilon.ToString(), "1.5");
}

TEST(TypecheckTest, ExactAndRepeatable) {
  ExprPtr e = P(kCountingQuery);
  Typing a = Unwrap(Typecheck(*e));
  Typing b = Unwrap(Typecheck(*e));
  EXPECT_EQ(RenderType(a.type), RenderType(b.type));
  EXPECT_EQ(a.type, b.type);
}

// --- ValidateQuery ---------------------------------------------------------

TEST(ValidateQueryTest, CountingQueryCertificate) {
  QueryCert cert = Unwrap(ValidateQuery(*P(kCountingQuery), PairsSchema()));
  EXPECT_EQ(cert.cost.epsilon.ToString(), "1.0");
  EXPECT_EQ(cert.cost.delta.ToString(), "0.001");
  EXPECT_EQ(cert.arg_type, PairsSchema());
  EXPECT_EQ(cert.ret_type, Ty::Real());
}

TEST(ValidateQueryTest, SchemaMismatch) {
  EXPECT_THAT(ValidateQuery(*P(kCountingQuery),
                            Unwrap(ParseType("M [L1, U | star, dR :: []]"))),
              HasKind(ErrorKind::kSchemaMismatch));
}

TEST(ValidateQueryTest, RawCountHasInfiniteCost) {
  EXPECT_THAT(
      ValidateQuery(*P(absl::StrCat("plam . df : ", kPairsSchema,
                                    " => real (rows df)")),
                    PairsSchema()),
      HasKind(ErrorKind::kInfiniteCost));
}

TEST(ValidateQueryTest, NotAPrivacyFunction) {
  EXPECT_THAT(ValidateQuery(*P("R+[1.0]"), PairsSchema()),
              HasKind(ErrorKind::kNotPrivFn));
  EXPECT_THAT(
      ValidateQuery(*P("gauss[R+[1.0], R+[1.0], R+[0.001]] <df> { R+[1.0] }"),
                    PairsSchema()),
      HasKind(ErrorKind::kUnboundVariable));
}

TEST(ValidateQueryTest, PrivacyFunctionMustBeClosed) {
  absl::StatusOr<QueryCert> r = ValidateQuery(
      *P(absl::StrCat("plam . df : ", kPairsSchema,
                      " => gauss[R+[1.0], R+[1.0], R+[0.001]] <df> { y }")),
      PairsSchema());
  EXPECT_THAT(r, HasKind(ErrorKind::kUnboundVariable));
}

TEST(ValidateQueryTest, GaussianCalibrationNeedsEpsilonAtMostOne) {
  std::string q = absl::StrReplaceAll(kCountingQuery, {{"R+[1.0] in", "R+[1.5] in"}});
  EXPECT_THAT(ValidateQuery(*P(q), PairsSchema()),
              HasKind(ErrorKind::kTypeError));
  std::string laplace = absl::StrCat(
      "plam . df : ", kPairsSchema,
      " => laplace[R+[1.0], R+[1.5]] <df> { real (rows df) }");
  DUET_EXPECT_OK(ValidateQuery(*P(laplace), PairsSchema()));
}

TEST(ValidateQueryTest, SchemaMustBeAMatrix) {
  EXPECT_THAT(ValidateQuery(*P(kCountingQuery), Ty::Real()),
              HasKind(ErrorKind::kSchemaMismatch));
}

// --- Properties ------------------------------------------------------------

std::string Sequenced(const std::string& e1, const std::string& d1,
                      const std::string& e2, const std::string& d2) {
  return absl::StrCat(
      "plam . df : ", kPairsSchema, " =>\n",
      "  let a = gauss[R+[1.0], R+[", e1, "], R+[", d1,
      "]] <df> { real (rows df) } in\n",
      "  gauss[R+[1.0], R+[", e2, "], R+[", d2, "]] <df> { real (rows df) }");
}

TEST(CompositionPropertyTest, SequencedCostsAddExactly) {
  std::mt19937_64 gen(99);
  auto decimal = [&](int max_int_part) {
    std::uniform_int_distribution<int> digits(1, 999);
    return absl::StrCat(std::uniform_int_distribution<int>(0, max_int_part)(gen),
                        ".", digits(gen));
  };
  for (int i = 0; i < 300; ++i) {
    std::string e1 = "0." + std::to_string(1 + i % 99);
    std::string e2 = decimal(0);
    std::string d1 = "0.00" + std::to_string(1 + i % 9);
    std::string d2 = "0.000" + std::to_string(1 + (i * 7) % 9);
    QueryCert cert =
        Unwrap(ValidateQuery(*P(Sequenced(e1, d1, e2, d2)), PairsSchema()));
    PrivCost expected{ExtReal(D(e1.c_str()) + D(e2.c_str())),
                      ExtReal(D(d1.c_str()) + D(d2.c_str()))};
    EXPECT_EQ(cert.cost, expected) << e1 << " " << e2;
  }
}

TEST(CompositionPropertyTest, SameMechanismTwiceCostsDouble) {
  QueryCert cert = Unwrap(
      ValidateQuery(*P(Sequenced("1.0", "0.001", "1.0", "0.001")), PairsSchema()));
  EXPECT_EQ(cert.cost.epsilon.ToString(), "2.0");
  EXPECT_EQ(cert.cost.delta.ToString(), "0.002");
}

// Replaces every mechanism's sensitivity literal s with s + bump.
ExprPtr WeakenBounds(const ExprPtr& e, const Decimal& bump) {
  if (const auto* g = e->As<GaussExpr>()) {
    ExprPtr s = g->sensitivity;
    if (const auto* lit = s->As<RLitExpr>()) s = Expr::RLit(lit->value + bump);
    return Expr::Gauss(s, g->epsilon, g->delta, g->vars,
                       WeakenBounds(g->body, bump));
  }
  if (const auto* l = e->As<LaplaceExpr>()) {
    ExprPtr s = l->sensitivity;
    if (const auto* lit = s->As<RLitExpr>()) s = Expr::RLit(lit->value + bump);
    return Expr::Laplace(s, l->epsilon, l->vars, WeakenBounds(l->body, bump));
  }
  if (const auto* let = e->As<LetExpr>()) {
    return Expr::Let(let->name, WeakenBounds(let->bound, bump),
                     WeakenBounds(let->body, bump));
  }
  if (const auto* lam = e->As<PLamExpr>()) {
    return Expr::PLam(lam->param, lam->param_type, WeakenBounds(lam->body, bump));
  }
  return e;
}

TEST(CheckerPropertyTest, WeakeningABoundNeverRejects) {
  QueryGenerator gen(5);
  int accepted = 0;
  for (int i = 0; i < 3000; ++i) {
    ExprPtr e = gen.Next();
    if (!ValidateQuery(*e, PairsSchema()).ok()) continue;
    ++accepted;
    ExprPtr weaker = WeakenBounds(e, D("0.5"));
    EXPECT_THAT(ValidateQuery(*weaker, PairsSchema()), IsOk()) << Render(*e);
  }
  EXPECT_GT(accepted, 100);
}

TEST(CheckerPropertyTest, AcceptedQueriesNeverReadTheDatabaseUnprotected) {
  QueryGenerator gen(17);
  int accepted = 0, rejected = 0, leaky = 0;
  for (int i = 0; i < 5000; ++i) {
    ExprPtr e = gen.Next();
    bool reads_raw = UnprotectedReads(*e, {}).count("df") > 0;
    leaky += reads_raw;
    absl::StatusOr<QueryCert> cert = ValidateQuery(*e, PairsSchema());
    if (cert.ok()) {
      ++accepted;
      EXPECT_FALSE(reads_raw) << Render(*e);
      EXPECT_TRUE(cert->cost.IsFinite());
    } else {
      ++rejected;
    }
  }
  // The generator must exercise both outcomes and produce leaky programs.
  EXPECT_GT(accepted, 200);
  EXPECT_GT(rejected, 200);
  EXPECT_GT(leaky, 200);
}

TEST(CheckerPropertyTest, TypecheckIsDeterministic) {
  QueryGenerator gen(23);
  for (int i = 0; i < 500; ++i) {
    ExprPtr e = gen.Next();
    absl::StatusOr<QueryCert> a = ValidateQuery(*e, PairsSchema());
    absl::StatusOr<QueryCert> b = ValidateQuery(*e, PairsSchema());
    ASSERT_EQ(a.ok(), b.ok());
    if (a.ok()) {
      EXPECT_EQ(a->cost.epsilon.ToString(), b->cost.epsilon.ToString());
      EXPECT_EQ(a->cost.delta.ToString(), b->cost.delta.ToString());
    } else {
      EXPECT_EQ(a.status(), b.status());
    }
  }
}

}  // namespace
}  // namespace duet

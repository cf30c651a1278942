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

#include "duet/enclave/enclave.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "duet/checker/checker.h"
#include "duet/common/error.h"
#include "duet/interp/interpreter.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"

namespace duet {

Enclave::Enclave(std::shared_ptr<const HardwareRoot> root,
                 std::string measurement, Ty schema, Decimal epsilon,
                 Decimal delta, Rng rng)
    : root_(std::move(root)),
      signing_key_(crypto::SigningKey::Generate()),
      kem_key_(crypto::KemKeyPair::Generate()),
      public_key_pem_(absl::StrCat(signing_key_.PublicKey().ToPem(),
                                   kem_key_.PublicPem())),
      measurement_(std::move(measurement)),
      schema_(schema),
      initial_epsilon_(epsilon),
      initial_delta_(delta),
      db_(std::make_shared<Database>(std::move(schema))),
      noise_(rng) {
  budget_.epsilon = std::move(epsilon);
  budget_.delta = std::move(delta);
  budget_.serial = 0;
  SignBudget();
}

absl::StatusOr<std::unique_ptr<Enclave>> Enclave::Create(
    const EnclaveConfig& config, std::shared_ptr<const HardwareRoot> root,
    Options options) {
  if (root == nullptr) {
    return MakeError(ErrorKind::kConfigError, "no hardware root");
  }
  absl::StatusOr<Ty> schema = ValidateConfig(config);
  if (!schema.ok()) return schema.status();
  absl::StatusOr<std::string> measurement = ComputeMeasurement(config);
  if (!measurement.ok()) return measurement.status();
  Rng rng = options.noise_seed.has_value() ? Rng(*options.noise_seed)
                                           : Rng::FromEntropy();
  return std::unique_ptr<Enclave>(
      new Enclave(std::move(root), *std::move(measurement), *std::move(schema),
                  config.epsilon, config.delta, rng));
}

void Enclave::SignBudget() {
  budget_.sig = signing_key_.Sign(crypto::Sha256(budget_.CanonicalBytes()));
}

absl::StatusOr<Quote> Enclave::GetQuote(absl::string_view nonce) const {
  if (nonce.size() != kQuoteNonceSize) {
    return MakeError(ErrorKind::kBadRequest,
                     absl::StrCat("nonce must be ", kQuoteNonceSize,
                                  " bytes"));
  }
  Quote quote;
  quote.measurement = measurement_;
  quote.enclave_pubkey = public_key_pem_;
  quote.initial_epsilon = initial_epsilon_;
  quote.initial_delta = initial_delta_;
  quote.nonce = std::string(nonce);
  root_->SignQuote(quote);
  return quote;
}

SignedComponent Enclave::SignComponent(BudgetComponent component) const {
  SignedComponent c;
  c.component = component;
  c.value = component == BudgetComponent::kEpsilon ? budget_.epsilon
                                                   : budget_.delta;
  c.serial = budget_.serial;
  c.sig = signing_key_.Sign(crypto::Sha256(c.CanonicalBytes()));
  return c;
}

absl::StatusOr<size_t> Enclave::Ingest(const Envelope& envelope) {
  absl::StatusOr<std::string> plaintext = OpenEnvelope(envelope, kem_key_);
  if (!plaintext.ok()) return plaintext.status();
  absl::StatusOr<Row> row = ParseRow(*plaintext);
  crypto::Cleanse(*plaintext);
  if (!row.ok()) return row.status();
  if (absl::Status s = db_->Append(*std::move(row)); !s.ok()) return s;
  return db_->size();
}

absl::StatusOr<SignedBudget> Enclave::Charge(const PrivCost& cost) {
  if (!cost.IsFinite()) {
    return MakeError(ErrorKind::kInfiniteCost, "cannot charge infinite cost");
  }
  if (!cost.FitsWithin(remaining())) {
    return MakeError(
        ErrorKind::kBudgetExhausted,
        absl::StrCat("query costs <", cost.epsilon.ToString(), ", ",
                     cost.delta.ToString(), "> but only <",
                     budget_.epsilon.ToString(), ", ",
                     budget_.delta.ToString(), "> remains"));
  }
  budget_.epsilon -= cost.epsilon.value();
  budget_.delta -= cost.delta.value();
  ++budget_.serial;
  SignBudget();
  return budget_;
}

absl::StatusOr<QueryResult> Enclave::RunQuery(absl::string_view program) {
  absl::StatusOr<ExprPtr> expr = Parse(program);
  if (!expr.ok()) return expr.status();
  absl::StatusOr<QueryCert> cert = ValidateQuery(**expr, schema_);
  if (!cert.ok()) return cert.status();
  absl::StatusOr<SignedBudget> remaining = Charge(cert->cost);
  if (!remaining.ok()) return remaining.status();

  absl::StatusOr<Value> fn = Evaluate(**expr, ValueEnv{}, noise_);
  if (!fn.ok()) return fn.status();
  absl::StatusOr<double> value = ApplyQuery(*fn, db_, noise_);
  if (!value.ok()) return value.status();
  return QueryResult{*value, FormatResult(*value), cert->cost,
                     *std::move(remaining)};
}

std::string Enclave::DiagnosticDump() const {
  nlohmann::json j = {
      {"measurement", crypto::HexEncode(measurement_)},
      {"enclave_pubkey", public_key_pem_},
      {"schema", RenderType(schema_)},
      {"rows", db_->size()},
      {"budget", SignedBudgetToJson(budget_)},
  };
  return j.dump();
}

}  // namespace duet

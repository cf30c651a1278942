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

#ifndef DUET_ENCLAVE_ENCLAVE_H_
#define DUET_ENCLAVE_ENCLAVE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "duet/common/privacy_cost.h"
#include "duet/crypto/crypto.h"
#include "duet/crypto/envelope.h"
#include "duet/enclave/attestation.h"
#include "duet/enclave/budget.h"
#include "duet/enclave/config.h"
#include "duet/interp/database.h"
#include "duet/lang/ast.h"
#include "duet/mech/mechanisms.h"

namespace duet {

struct QueryResult {
  double value = 0;
  // FormatResult(value).
  std::string value_text;
  PrivCost cost;
  SignedBudget remaining;
};

// The trusted component. Holds the only copy of the enclave private keys,
// the decrypted database and the remaining privacy budget.
//
// Not thread-safe: callers serialize access (EnclaveService does).
class Enclave {
 public:
  struct Options {
    // Fixed noise seed for tests; otherwise seeded from the OS CSPRNG.
    std::optional<uint64_t> noise_seed;
  };

  // Generates a fresh key pair. kConfigError on a bad config.
  static absl::StatusOr<std::unique_ptr<Enclave>> Create(
      const EnclaveConfig& config, std::shared_ptr<const HardwareRoot> root,
      Options options);
  static absl::StatusOr<std::unique_ptr<Enclave>> Create(
      const EnclaveConfig& config, std::shared_ptr<const HardwareRoot> root) {
    return Create(config, std::move(root), Options{});
  }

  Enclave(const Enclave&) = delete;
  Enclave& operator=(const Enclave&) = delete;

  // `nonce` must be 16 bytes.
  absl::StatusOr<Quote> GetQuote(absl::string_view nonce) const;

  const std::string& public_key_pem() const { return public_key_pem_; }
  const std::string& measurement() const { return measurement_; }
  const Ty& schema() const { return schema_; }
  PrivCost remaining() const {
    return {ExtReal(budget_.epsilon), ExtReal(budget_.delta)};
  }
  const SignedBudget& signed_budget() const { return budget_; }
  SignedComponent SignComponent(BudgetComponent component) const;
  size_t row_count() const { return db_->size(); }

  // Decrypts, parses and appends one row; returns the new row count.
  // kDecryptError or kSchemaError; the database is unchanged on failure.
  absl::StatusOr<size_t> Ingest(const Envelope& envelope);

  // Subtracts `cost` if it fits within the remaining budget componentwise
  // and returns the freshly signed budget. kBudgetExhausted otherwise, with
  // nothing changed.
  absl::StatusOr<SignedBudget> Charge(const PrivCost& cost);

  // parse -> validate against the schema -> charge -> evaluate. Budget and
  // database are untouched by any failure before the charge.
  absl::StatusOr<QueryResult> RunQuery(absl::string_view program);

  // Public state only, as JSON text.
  std::string DiagnosticDump() const;

 private:
  friend class EnclaveTestPeer;

  Enclave(std::shared_ptr<const HardwareRoot> root, std::string measurement,
          Ty schema, Decimal epsilon, Decimal delta, Rng rng);

  void SignBudget();

  std::shared_ptr<const HardwareRoot> root_;
  crypto::SigningKey signing_key_;
  crypto::KemKeyPair kem_key_;
  std::string public_key_pem_;
  std::string measurement_;
  Ty schema_;
  Decimal initial_epsilon_;
  Decimal initial_delta_;
  SignedBudget budget_;
  std::shared_ptr<Database> db_;
  RngNoiseSource noise_;
};

}  // namespace duet

#endif  // DUET_ENCLAVE_ENCLAVE_H_

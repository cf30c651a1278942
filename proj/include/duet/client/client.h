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

#ifndef DUET_CLIENT_CLIENT_H_
#define DUET_CLIENT_CLIENT_H_

#include <map>
#include <memory>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"
#include "duet/common/privacy_cost.h"
#include "duet/crypto/crypto.h"
#include "duet/crypto/envelope.h"
#include "duet/enclave/budget.h"
#include "duet/interp/database.h"

namespace duet {

// What a data owner is willing to accept. The root key and the measurement
// are the only things the client trusts.
struct OwnerPolicy {
  Decimal max_epsilon;
  Decimal max_delta;
  std::string measurement;  // raw digest
  crypto::VerifyingKey root_key;

  // key=value lines: max_epsilon, max_delta, measurement (hex),
  // root_pubkey_file (PEM, relative paths resolved against `base_dir`).
  static absl::StatusOr<OwnerPolicy> Parse(absl::string_view text,
                                           const std::string& base_dir);
  static absl::StatusOr<OwnerPolicy> Load(const std::string& path);
};

struct HttpReply {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Failures to reach the server are kTransport.
  virtual absl::StatusOr<HttpReply> Get(
      const std::string& path,
      const std::map<std::string, std::string>& params) = 0;
  virtual absl::StatusOr<HttpReply> Post(const std::string& path,
                                         const std::string& json_body) = 0;
};

// `base_url` like "http://127.0.0.1:8080".
std::unique_ptr<HttpTransport> MakeHttpTransport(const std::string& base_url);

// An enclave whose quote verified under the owner's policy.
struct VerifiedServer {
  EnclavePublicKey enclave_key;
  PrivCost initial_budget;
};

// Challenges the server with a fresh nonce and checks the quote. The enclave
// key comes from the quote only. Aborts with kAttestFailed, kBudgetTooLarge
// or kTransport.
absl::StatusOr<VerifiedServer> Negotiate(HttpTransport& transport,
                                         const OwnerPolicy& policy);

absl::StatusOr<Envelope> EncryptRow(const Row& row,
                                    const EnclavePublicKey& enclave_key);

// Returns the database size after the insert. Server rejections come back
// with the server's error kind.
absl::StatusOr<size_t> SubmitRow(HttpTransport& transport,
                                 const VerifiedServer& server, const Row& row);

struct QueryOutcome {
  double value = 0;
  PrivCost cost;
  SignedBudget remaining;
  // False when the remaining budget does not carry a valid enclave signature.
  bool remaining_verified = false;
};

absl::StatusOr<QueryOutcome> SubmitQuery(HttpTransport& transport,
                                         const VerifiedServer& server,
                                         absl::string_view program);

// True for the kinds Negotiate aborts with.
bool IsAbort(const absl::Status& status);

}  // namespace duet

#endif  // DUET_CLIENT_CLIENT_H_

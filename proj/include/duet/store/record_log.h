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

#ifndef DUET_STORE_RECORD_LOG_H_
#define DUET_STORE_RECORD_LOG_H_

#include <chrono>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "duet/crypto/envelope.h"

namespace duet {

struct Record {
  Envelope envelope;
  std::chrono::system_clock::time_point inserted_at;
};

// Append-only log of ciphertexts held by the untrusted side. It never sees
// plaintext: records are exactly the envelopes clients sent.
//
// With a backing file every append is written as one JSON line
// {"wrapped_key", "nonce", "ciphertext"} (base64 fields). Records persisted by
// an earlier run are loaded back but stay undecryptable, since the enclave
// key that could open them died with that run.
//
// Thread-safe. Appends are serialized; snapshots are consistent prefixes.
class RecordLog {
 public:
  RecordLog() = default;
  static absl::StatusOr<std::unique_ptr<RecordLog>> Open(
      const std::string& path);

  // Returns the index of the new record. kMalformedEnvelope if a field is
  // missing or mis-sized.
  absl::StatusOr<size_t> Append(const Envelope& envelope);

  std::vector<Record> Snapshot() const;
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<Record> records_;
  std::ofstream file_;
};

}  // namespace duet

#endif  // DUET_STORE_RECORD_LOG_H_

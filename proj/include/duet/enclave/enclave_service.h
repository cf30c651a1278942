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

#ifndef DUET_ENCLAVE_ENCLAVE_SERVICE_H_
#define DUET_ENCLAVE_ENCLAVE_SERVICE_H_

#include <memory>
#include <string>
#include "absl/strings/string_view.h"

#include "duet/enclave/enclave.h"
#include "duet/gateway/frame.h"

namespace duet {

// Trusted-side dispatcher: turns boundary frames into enclave calls. Every
// response is built from public data or signed objects; no path returns
// database contents other than a noised query result.
//
// Not thread-safe; channels serialize calls.
class EnclaveService {
 public:
  explicit EnclaveService(std::unique_ptr<Enclave> enclave)
      : enclave_(std::move(enclave)) {}

  BoundaryFrame Handle(const BoundaryFrame& request);
  // Decodes, handles and re-encodes. A malformed request gets a
  // ProtocolError response carrying whatever request id could be read.
  std::string HandleBytes(absl::string_view request);

  Enclave& enclave() { return *enclave_; }

 private:
  absl::StatusOr<nlohmann::json> Dispatch(FrameKind kind,
                                          const nlohmann::json& payload);

  std::unique_ptr<Enclave> enclave_;
};

}  // namespace duet

#endif  // DUET_ENCLAVE_ENCLAVE_SERVICE_H_

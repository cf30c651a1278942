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

#include "duet/store/record_log.h"

#include <fstream>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {

absl::StatusOr<std::unique_ptr<RecordLog>> RecordLog::Open(
    const std::string& path) {
  auto log = std::make_unique<RecordLog>();
  {
    std::ifstream in(path);
    std::string line;
    size_t line_no = 0;
    while (in && std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      absl::StatusOr<Envelope> envelope = EnvelopeFromJson(j);
      if (!envelope.ok()) {
        return MakeError(ErrorKind::kConfigError,
                         absl::StrCat(path, ":", line_no, ": ",
                                      envelope.status().message()));
      }
      log->records_.push_back({*std::move(envelope), {}});
    }
  }
  log->file_.open(path, std::ios::app);
  if (!log->file_) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("cannot open record log ", path));
  }
  return log;
}

absl::StatusOr<size_t> RecordLog::Append(const Envelope& envelope) {
  if (absl::Status s = CheckEnvelopeShape(envelope); !s.ok()) return s;
  std::lock_guard<std::mutex> lock(mu_);
  if (file_.is_open()) {
    file_ << EnvelopeToJson(envelope).dump() << '\n';
    file_.flush();
  }
  records_.push_back({envelope, std::chrono::system_clock::now()});
  return records_.size() - 1;
}

std::vector<Record> RecordLog::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

size_t RecordLog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace duet

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "duet/crypto/envelope.h"
#include "duet/store/record_log.h"
#include "test_util.h"

namespace duet {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

const EnclavePublicKey& Key() {
  static const auto* enclave = TestEnclave().release();
  static const EnclavePublicKey key =
      Unwrap(EnclavePublicKey::FromPem(enclave->public_key_pem()));
  return key;
}

Envelope Sealed(const std::string& row) {
  return Unwrap(SealEnvelope(row, Key()));
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          absl::StrCat("duet_store_", ::getpid(), "_", name))
      .string();
}

TEST(RecordLogTest, AppendReturnsSequentialIndices) {
  RecordLog log;
  Envelope env = Sealed("1,2");
  for (size_t i = 0; i < 1000; ++i) {
    ASSERT_EQ(Unwrap(log.Append(env)), i);
  }
  EXPECT_EQ(log.size(), 1000u);
}

TEST(RecordLogTest, RejectsMalformedEnvelopes) {
  RecordLog log;
  Envelope good = Sealed("1,2");
  Envelope e = good;
  e.wrapped_key.clear();
  EXPECT_THAT(log.Append(e), HasKind(ErrorKind::kMalformedEnvelope));
  e = good;
  e.nonce.pop_back();
  EXPECT_THAT(log.Append(e), HasKind(ErrorKind::kMalformedEnvelope));
  e = good;
  e.ciphertext.clear();
  EXPECT_THAT(log.Append(e), HasKind(ErrorKind::kMalformedEnvelope));
  EXPECT_EQ(log.size(), 0u);
}

TEST(RecordLogTest, SnapshotsAreImmutablePrefixes) {
  RecordLog log;
  DUET_ASSERT_OK(log.Append(Sealed("1,2")));
  std::vector<Record> snap = log.Snapshot();
  DUET_ASSERT_OK(log.Append(Sealed("3,4")));
  ASSERT_EQ(snap.size(), 1u);
  EXPECT_EQ(log.Snapshot().size(), 2u);
  EXPECT_EQ(log.Snapshot()[0].envelope, snap[0].envelope);
  EXPECT_LE(snap[0].inserted_at, log.Snapshot()[1].inserted_at);
}

TEST(RecordLogTest, PersistsAndReloadsCiphertexts) {
  std::string path = TempPath("persist.jsonl");
  std::remove(path.c_str());
  std::vector<Envelope> sent;
  {
    auto log = Unwrap(RecordLog::Open(path));
    for (int i = 0; i < 5; ++i) {
      sent.push_back(Sealed(absl::StrCat(i, ",", i)));
      DUET_ASSERT_OK(log->Append(sent.back()));
    }
  }
  auto reloaded = Unwrap(RecordLog::Open(path));
  std::vector<Record> records = reloaded->Snapshot();
  ASSERT_EQ(records.size(), sent.size());
  for (size_t i = 0; i < sent.size(); ++i) {
    EXPECT_EQ(records[i].envelope, sent[i]);
  }
  EXPECT_EQ(Unwrap(reloaded->Append(Sealed("9,9"))), 5u);
  std::remove(path.c_str());
}

TEST(RecordLogTest, CorruptFileIsReported) {
  std::string path = TempPath("corrupt.jsonl");
  std::ofstream(path) << "{not json\n";
  EXPECT_FALSE(RecordLog::Open(path).ok());
  std::remove(path.c_str());
}

TEST(RecordLogTest, NoReadPathExposesPlaintext) {
  std::string path = TempPath("plain.jsonl");
  std::remove(path.c_str());
  const std::string secret = "987654321.1234";
  {
    auto log = Unwrap(RecordLog::Open(path));
    DUET_ASSERT_OK(log->Append(Sealed(absl::StrCat(secret, ",", secret))));
    for (const Record& r : log->Snapshot()) {
      std::string all = r.envelope.wrapped_key + r.envelope.nonce +
                        r.envelope.ciphertext +
                        EnvelopeToJson(r.envelope).dump();
      EXPECT_THAT(all, Not(HasSubstr(secret)));
    }
  }
  std::stringstream file;
  file << std::ifstream(path).rdbuf();
  EXPECT_THAT(file.str(), HasSubstr("ciphertext"));
  EXPECT_THAT(file.str(), Not(HasSubstr(secret)));
  std::remove(path.c_str());
}

TEST(RecordLogTest, ConcurrentAppendsGetDistinctIndices) {
  RecordLog log;
  Envelope env = Sealed("1,2");
  constexpr int kThreads = 8, kEach = 250;
  std::vector<std::vector<size_t>> seen(kThreads);
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kEach; ++i) seen[t].push_back(*log.Append(env));
    });
  }
  for (auto& t : threads) t.join();
  std::vector<bool> hit(kThreads * kEach, false);
  for (const auto& v : seen) {
    for (size_t i = 1; i < v.size(); ++i) EXPECT_LT(v[i - 1], v[i]);
    for (size_t idx : v) {
      ASSERT_LT(idx, hit.size());
      EXPECT_FALSE(hit[idx]);
      hit[idx] = true;
    }
  }
  EXPECT_EQ(log.size(), static_cast<size_t>(kThreads * kEach));
}

}  // namespace
}  // namespace duet

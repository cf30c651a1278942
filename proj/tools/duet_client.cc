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

// duet-client: data-owner and analyst command line.
//
//   duet-client --policy owner.policy attest
//   duet-client --policy owner.policy submit --row "44.47,-73.21"
//   duet-client --policy owner.policy query count.duet
//
// Exit status: 0 success, 2 negotiation aborted, 3 server error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "duet/client/client.h"
#include "duet/common/error.h"

namespace {

constexpr int kExitAbort = 2;
constexpr int kExitServer = 3;

int Report(const absl::Status& status) {
  std::cerr << "duet-client: " << duet::WireName(duet::GetErrorKind(status))
            << ": " << status.message() << "\n";
  return duet::IsAbort(status) ? kExitAbort : kExitServer;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duet data-owner and analyst client"};
  app.require_subcommand(1);
  std::string server_url = "http://127.0.0.1:8080";
  std::string policy_path;
  app.add_option("--server", server_url, "Gateway base URL");
  app.add_option("--policy", policy_path, "Owner policy file")->required();

  CLI::App* attest =
      app.add_subcommand("attest", "Verify the server's attestation quote");
  std::string row_text;
  CLI::App* submit = app.add_subcommand("submit", "Encrypt and insert a row");
  submit->add_option("--row", row_text, "Comma-separated decimals")
      ->required();
  std::string program_path;
  CLI::App* query = app.add_subcommand("query", "Run a query program");
  query->add_option("file", program_path, "Program source")->required();
  CLI11_PARSE(app, argc, argv);

  absl::StatusOr<duet::OwnerPolicy> policy =
      duet::OwnerPolicy::Load(policy_path);
  if (!policy.ok()) {
    std::cerr << "duet-client: " << policy.status().message() << "\n";
    return kExitAbort;
  }
  std::unique_ptr<duet::HttpTransport> transport =
      duet::MakeHttpTransport(server_url);
  absl::StatusOr<duet::VerifiedServer> server =
      duet::Negotiate(*transport, *policy);
  if (!server.ok()) return Report(server.status());

  if (attest->parsed()) {
    std::cout << "attestation verified; initial budget "
              << server->initial_budget << "\n";
    return 0;
  }

  if (submit->parsed()) {
    absl::StatusOr<duet::Row> row = duet::ParseRow(row_text);
    if (!row.ok()) {
      std::cerr << "duet-client: " << row.status().message() << "\n";
      return kExitAbort;
    }
    absl::StatusOr<size_t> count = duet::SubmitRow(*transport, *server, *row);
    if (!count.ok()) return Report(count.status());
    std::cout << "inserted; database now holds " << *count << " rows\n";
    return 0;
  }

  std::ifstream in(program_path);
  if (!in) {
    std::cerr << "duet-client: cannot read " << program_path << "\n";
    return kExitAbort;
  }
  std::stringstream program;
  program << in.rdbuf();
  absl::StatusOr<duet::QueryOutcome> outcome =
      duet::SubmitQuery(*transport, *server, program.str());
  if (!outcome.ok()) return Report(outcome.status());
  std::cout << "value: " << outcome->value << "\n"
            << "cost: " << outcome->cost << "\n"
            << "remaining: <" << outcome->remaining.epsilon << ", "
            << outcome->remaining.delta << "> serial "
            << outcome->remaining.serial << "\n";
  if (!outcome->remaining_verified) {
    std::cerr << "WARNING: the remaining budget is NOT signed by the attested "
                 "enclave. Do not trust it.\n";
    return kExitServer;
  }
  return 0;
}

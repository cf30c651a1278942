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

// duet-server: hosts the enclave and the HTTP gateway.
//
//   duet-server root-keygen --out root.pem --pub root.pub.pem
//   duet-server measure --config enclave.conf
//   duet-server run --config enclave.conf --root-key root.pem --port 8080
//   duet-server enclave --config enclave.conf --root-key root.pem --socket S
//   duet-server gateway --socket S --port 8080

#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "duet/common/error.h"
#include "duet/crypto/crypto.h"
#include "duet/enclave/config.h"
#include "duet/enclave/enclave.h"
#include "duet/enclave/enclave_service.h"
#include "duet/gateway/channel.h"
#include "duet/gateway/gateway.h"
#include "duet/store/record_log.h"

namespace duet {
namespace {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorKind::kConfigError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  return static_cast<bool>(out);
}

int Fail(const absl::Status& status) {
  std::cerr << "duet-server: " << WireName(GetErrorKind(status)) << ": "
            << status.message() << "\n";
  return 1;
}

// Blocks SIGINT and SIGTERM in every thread started afterwards so that the
// main thread can wait for them.
sigset_t BlockShutdownSignals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

void WaitForShutdown(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
}

absl::StatusOr<std::unique_ptr<Enclave>> LoadEnclave(
    const std::string& config_path, const std::string& root_key_path,
    std::optional<uint64_t> seed) {
  absl::StatusOr<std::string> config_text = ReadFile(config_path);
  if (!config_text.ok()) return config_text.status();
  absl::StatusOr<EnclaveConfig> config = EnclaveConfig::Parse(*config_text);
  if (!config.ok()) return config.status();
  absl::StatusOr<std::string> root_pem = ReadFile(root_key_path);
  if (!root_pem.ok()) return root_pem.status();
  absl::StatusOr<HardwareRoot> root = HardwareRoot::FromPrivatePem(*root_pem);
  if (!root.ok()) return root.status();
  Enclave::Options options;
  options.noise_seed = seed;
  return Enclave::Create(
      *config, std::make_shared<const HardwareRoot>(std::move(*root)),
      options);
}

absl::StatusOr<std::shared_ptr<RecordLog>> OpenLog(const std::string& path) {
  if (path.empty()) return std::make_shared<RecordLog>();
  absl::StatusOr<std::unique_ptr<RecordLog>> log = RecordLog::Open(path);
  if (!log.ok()) return log.status();
  return std::shared_ptr<RecordLog>(std::move(*log));
}

int ServeGateway(std::shared_ptr<EnclaveChannel> channel,
                 const std::string& log_path, const std::string& host,
                 int port, const std::string& port_file,
                 const sigset_t& signals) {
  absl::StatusOr<std::shared_ptr<RecordLog>> log = OpenLog(log_path);
  if (!log.ok()) return Fail(log.status());
  auto gateway = std::make_shared<Gateway>(std::move(channel), *log);
  GatewayHttpServer server(gateway);
  absl::StatusOr<int> bound = server.Start(host, port);
  if (!bound.ok()) return Fail(bound.status());
  if (!port_file.empty() && !WriteFile(port_file, std::to_string(*bound))) {
    return Fail(MakeError(ErrorKind::kConfigError,
                          "cannot write " + port_file));
  }
  std::cout << "gateway listening on " << host << ":" << *bound << std::endl;
  WaitForShutdown(signals);
  server.Stop();
  return 0;
}

}  // namespace
}  // namespace duet

int main(int argc, char** argv) {
  using namespace duet;  // NOLINT
  CLI::App app{"Duet enclave server"};
  app.require_subcommand(1);

  std::string out_path = "root.pem";
  std::string pub_path = "root.pub.pem";
  CLI::App* keygen =
      app.add_subcommand("root-keygen", "Create a simulated hardware root key");
  keygen->add_option("--out", out_path, "Private key output (PEM)");
  keygen->add_option("--pub", pub_path, "Public key output (PEM)");

  std::string config_path;
  CLI::App* measure =
      app.add_subcommand("measure", "Print the measurement of a config");
  measure->add_option("--config", config_path)->required();

  std::string root_key_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;
  std::string port_file;
  std::string socket_path;
  std::optional<uint64_t> seed;

  CLI::App* run = app.add_subcommand(
      "run", "Enclave and gateway in one process over an in-process channel");
  run->add_option("--config", config_path)->required();
  run->add_option("--root-key", root_key_path)->required();
  run->add_option("--host", host);
  run->add_option("--port", port, "0 picks a free port");
  run->add_option("--log", log_path, "Envelope log (JSON lines)");
  run->add_option("--port-file", port_file, "Write the bound port here");
  run->add_option("--seed", seed, "Fixed noise seed (testing only)");

  CLI::App* enclave_cmd =
      app.add_subcommand("enclave", "Host the enclave on a unix socket");
  enclave_cmd->add_option("--config", config_path)->required();
  enclave_cmd->add_option("--root-key", root_key_path)->required();
  enclave_cmd->add_option("--socket", socket_path)->required();
  enclave_cmd->add_option("--seed", seed, "Fixed noise seed (testing only)");

  CLI::App* gateway_cmd = app.add_subcommand(
      "gateway", "Serve HTTP, relaying to an enclave on a unix socket");
  gateway_cmd->add_option("--socket", socket_path)->required();
  gateway_cmd->add_option("--host", host);
  gateway_cmd->add_option("--port", port, "0 picks a free port");
  gateway_cmd->add_option("--log", log_path, "Envelope log (JSON lines)");
  gateway_cmd->add_option("--port-file", port_file,
                          "Write the bound port here");

  CLI11_PARSE(app, argc, argv);

  if (keygen->parsed()) {
    HardwareRoot root = HardwareRoot::Generate();
    if (!WriteFile(out_path, root.PrivateKeyPem()) ||
        !WriteFile(pub_path, root.PublicKeyPem())) {
      return Fail(MakeError(ErrorKind::kConfigError, "cannot write key"));
    }
    std::cout << "wrote " << out_path << " and " << pub_path << "\n";
    return 0;
  }

  if (measure->parsed()) {
    absl::StatusOr<std::string> text = ReadFile(config_path);
    if (!text.ok()) return Fail(text.status());
    absl::StatusOr<EnclaveConfig> config = EnclaveConfig::Parse(*text);
    if (!config.ok()) return Fail(config.status());
    absl::StatusOr<std::string> digest = ComputeMeasurement(*config);
    if (!digest.ok()) return Fail(digest.status());
    std::cout << crypto::HexEncode(*digest) << "\n";
    return 0;
  }

  sigset_t signals = BlockShutdownSignals();

  if (run->parsed()) {
    absl::StatusOr<std::unique_ptr<Enclave>> enclave =
        LoadEnclave(config_path, root_key_path, seed);
    if (!enclave.ok()) return Fail(enclave.status());
    auto channel = std::make_shared<InProcessChannel>(
        std::make_unique<EnclaveService>(std::move(*enclave)));
    return ServeGateway(channel, log_path, host, port, port_file, signals);
  }

  if (enclave_cmd->parsed()) {
    absl::StatusOr<std::unique_ptr<Enclave>> enclave =
        LoadEnclave(config_path, root_key_path, seed);
    if (!enclave.ok()) return Fail(enclave.status());
    auto service = std::make_shared<EnclaveService>(std::move(*enclave));
    absl::StatusOr<std::unique_ptr<EnclaveSocketServer>> server =
        EnclaveSocketServer::Listen(socket_path, service);
    if (!server.ok()) return Fail(server.status());
    std::thread serving([&] { (*server)->Serve(); });
    std::cout << "enclave listening on " << socket_path << std::endl;
    WaitForShutdown(signals);
    (*server)->Stop();
    serving.join();
    return 0;
  }

  absl::StatusOr<std::unique_ptr<SocketChannel>> channel =
      SocketChannel::Connect(socket_path);
  if (!channel.ok()) return Fail(channel.status());
  return ServeGateway(std::shared_ptr<EnclaveChannel>(std::move(*channel)),
                      log_path, host, port, port_file, signals);
}

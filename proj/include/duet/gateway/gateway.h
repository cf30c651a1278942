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

#ifndef DUET_GATEWAY_GATEWAY_H_
#define DUET_GATEWAY_GATEWAY_H_

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include "absl/strings/string_view.h"
#include <thread>
#include <vector>

#include "absl/status/statusor.h"
#include "duet/gateway/channel.h"
#include "duet/store/record_log.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace duet {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct Route {
  absl::string_view method;
  absl::string_view path;
};

// HTTP status for an error kind.
int HttpStatusFor(ErrorKind kind);

// The untrusted front end. Holds only ciphertext envelopes and public data;
// everything else is forwarded to the enclave through the channel.
class Gateway {
 public:
  // `log` may be null, in which case accepted envelopes are not persisted.
  Gateway(std::shared_ptr<EnclaveChannel> channel,
          std::shared_ptr<RecordLog> log);

  static const std::vector<Route>& Routes();

  HttpResponse Handle(const HttpRequest& request);

  // Registers every route on `server`.
  void Install(httplib::Server& server);

 private:
  absl::StatusOr<nlohmann::json> Call(FrameKind kind,
                                      const nlohmann::json& payload);
  HttpResponse Budget(absl::string_view component);
  HttpResponse Attest(const HttpRequest& request);
  HttpResponse PubKey();
  HttpResponse Insert(const HttpRequest& request);
  HttpResponse Query(const HttpRequest& request);

  std::shared_ptr<EnclaveChannel> channel_;
  std::shared_ptr<RecordLog> log_;
  std::atomic<uint64_t> next_id_{1};
};

// Runs a gateway on an httplib server in a background thread.
class GatewayHttpServer {
 public:
  explicit GatewayHttpServer(std::shared_ptr<Gateway> gateway);
  ~GatewayHttpServer();

  // Binds and starts serving. Port 0 picks a free port; returns the bound
  // port.
  absl::StatusOr<int> Start(const std::string& host, int port);
  void Stop();

 private:
  std::shared_ptr<Gateway> gateway_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace duet

#endif  // DUET_GATEWAY_GATEWAY_H_

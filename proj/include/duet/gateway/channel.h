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

#ifndef DUET_GATEWAY_CHANNEL_H_
#define DUET_GATEWAY_CHANNEL_H_

#include <atomic>
#include <condition_variable>
#include <deque>
#include <future>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/statusor.h"
#include "duet/enclave/enclave_service.h"
#include "duet/gateway/frame.h"

namespace duet {

// The gateway's only way to reach the enclave. Implementations deliver
// frames to a single enclave in FIFO order and return the matching response.
class EnclaveChannel {
 public:
  virtual ~EnclaveChannel() = default;

  // kEnclaveUnavailable when the enclave cannot be reached.
  virtual absl::StatusOr<BoundaryFrame> Relay(const BoundaryFrame& request) = 0;
};

// Hosts the enclave in this process behind a single worker thread. Frames are
// passed as encoded bytes so the same decode path runs as over a socket.
class InProcessChannel final : public EnclaveChannel {
 public:
  explicit InProcessChannel(std::unique_ptr<EnclaveService> service);
  ~InProcessChannel() override;

  absl::StatusOr<BoundaryFrame> Relay(const BoundaryFrame& request) override;
  // Enqueues without waiting. Requests are served in enqueue order.
  std::future<absl::StatusOr<BoundaryFrame>> RelayAsync(
      const BoundaryFrame& request);

  // Stops the worker; pending and later requests fail with
  // kEnclaveUnavailable.
  void Shutdown();

 private:
  struct Pending {
    std::string bytes;
    std::promise<absl::StatusOr<BoundaryFrame>> done;
  };

  void Run();

  std::unique_ptr<EnclaveService> service_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Pending> queue_;
  bool stopped_ = false;
  std::thread worker_;
};

// Reaches an enclave host over a unix domain socket. One request is in flight
// at a time.
class SocketChannel final : public EnclaveChannel {
 public:
  static absl::StatusOr<std::unique_ptr<SocketChannel>> Connect(
      const std::string& path);
  ~SocketChannel() override;

  absl::StatusOr<BoundaryFrame> Relay(const BoundaryFrame& request) override;

 private:
  explicit SocketChannel(int fd) : fd_(fd) {}

  std::mutex mu_;
  int fd_;
};

// Enclave side of SocketChannel. Each connection gets a thread; calls into
// the service are serialized.
class EnclaveSocketServer {
 public:
  static absl::StatusOr<std::unique_ptr<EnclaveSocketServer>> Listen(
      const std::string& path, std::shared_ptr<EnclaveService> service);
  ~EnclaveSocketServer();

  // Accepts until Stop().
  void Serve();
  void Stop();

 private:
  EnclaveSocketServer(int fd, std::string path,
                      std::shared_ptr<EnclaveService> service)
      : listen_fd_(fd), path_(std::move(path)), service_(std::move(service)) {}

  void ServeConnection(int fd);

  int listen_fd_;
  std::string path_;
  std::shared_ptr<EnclaveService> service_;
  std::mutex service_mu_;
  std::mutex conn_mu_;
  std::vector<int> conn_fds_;
  std::vector<std::thread> conn_threads_;
  std::atomic<bool> stopping_{false};
};

}  // namespace duet

#endif  // DUET_GATEWAY_CHANNEL_H_

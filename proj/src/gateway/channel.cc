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

#include "duet/gateway/channel.h"

#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"

namespace duet {
namespace {

absl::Status Unavailable(absl::string_view what) {
  return MakeError(ErrorKind::kEnclaveUnavailable,
                   absl::StrCat("enclave unavailable: ", what));
}

bool WriteAll(int fd, absl::string_view bytes) {
  while (!bytes.empty()) {
    ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    bytes.remove_prefix(static_cast<size_t>(n));
  }
  return true;
}

bool ReadAll(int fd, char* out, size_t len) {
  while (len > 0) {
    ssize_t n = ::recv(fd, out, len, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    out += n;
    len -= static_cast<size_t>(n);
  }
  return true;
}

// Reads one encoded frame. Returns an empty string on EOF or error; a
// protocol violation yields a status.
absl::StatusOr<std::string> ReadFrameBytes(int fd) {
  std::string bytes(kFrameHeaderSize, '\0');
  if (!ReadAll(fd, bytes.data(), kFrameHeaderSize)) return std::string();
  absl::StatusOr<uint32_t> len = PayloadLength(bytes);
  if (!len.ok()) return len.status();
  bytes.resize(kFrameHeaderSize + *len);
  if (!ReadAll(fd, bytes.data() + kFrameHeaderSize, *len)) {
    return std::string();
  }
  return bytes;
}

absl::StatusOr<sockaddr_un> UnixAddress(const std::string& path) {
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof(addr.sun_path)) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("socket path too long: ", path));
  }
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  return addr;
}

}  // namespace

InProcessChannel::InProcessChannel(std::unique_ptr<EnclaveService> service)
    : service_(std::move(service)), worker_([this] { Run(); }) {}

InProcessChannel::~InProcessChannel() { Shutdown(); }

void InProcessChannel::Run() {
  for (;;) {
    Pending job;
    {
      std::unique_lock<std::mutex> lock(mu_);
      cv_.wait(lock, [this] { return stopped_ || !queue_.empty(); });
      if (stopped_) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    std::string reply = service_->HandleBytes(job.bytes);
    job.done.set_value(DecodeFrame(reply));
  }
}

std::future<absl::StatusOr<BoundaryFrame>> InProcessChannel::RelayAsync(
    const BoundaryFrame& request) {
  Pending job{EncodeFrame(request), {}};
  std::future<absl::StatusOr<BoundaryFrame>> result = job.done.get_future();
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (stopped_) {
      job.done.set_value(Unavailable("channel shut down"));
      return result;
    }
    queue_.push_back(std::move(job));
  }
  cv_.notify_one();
  return result;
}

absl::StatusOr<BoundaryFrame> InProcessChannel::Relay(
    const BoundaryFrame& request) {
  return RelayAsync(request).get();
}

void InProcessChannel::Shutdown() {
  std::deque<Pending> orphaned;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (stopped_ && !worker_.joinable()) return;
    stopped_ = true;
    orphaned.swap(queue_);
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
  for (Pending& job : orphaned) {
    job.done.set_value(Unavailable("channel shut down"));
  }
}

absl::StatusOr<std::unique_ptr<SocketChannel>> SocketChannel::Connect(
    const std::string& path) {
  absl::StatusOr<sockaddr_un> addr = UnixAddress(path);
  if (!addr.ok()) return addr.status();
  int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) return Unavailable(std::strerror(errno));
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&*addr),
                sizeof(*addr)) != 0) {
    int err = errno;
    ::close(fd);
    return Unavailable(absl::StrCat(path, ": ", std::strerror(err)));
  }
  return std::unique_ptr<SocketChannel>(new SocketChannel(fd));
}

SocketChannel::~SocketChannel() {
  if (fd_ >= 0) ::close(fd_);
}

absl::StatusOr<BoundaryFrame> SocketChannel::Relay(
    const BoundaryFrame& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (fd_ < 0) return Unavailable("connection closed");
  if (!WriteAll(fd_, EncodeFrame(request))) {
    ::close(fd_);
    fd_ = -1;
    return Unavailable("write failed");
  }
  absl::StatusOr<std::string> bytes = ReadFrameBytes(fd_);
  if (!bytes.ok()) return bytes.status();
  if (bytes->empty()) {
    ::close(fd_);
    fd_ = -1;
    return Unavailable("connection closed");
  }
  absl::StatusOr<BoundaryFrame> frame = DecodeFrame(*bytes);
  if (!frame.ok()) return frame.status();
  if (frame->request_id != request.request_id) {
    return MakeError(ErrorKind::kProtocolError,
                     "response id does not match request");
  }
  return frame;
}

absl::StatusOr<std::unique_ptr<EnclaveSocketServer>> EnclaveSocketServer::Listen(
    const std::string& path, std::shared_ptr<EnclaveService> service) {
  absl::StatusOr<sockaddr_un> addr = UnixAddress(path);
  if (!addr.ok()) return addr.status();
  ::unlink(path.c_str());
  int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) return Unavailable(std::strerror(errno));
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&*addr), sizeof(*addr)) !=
          0 ||
      ::listen(fd, 16) != 0) {
    int err = errno;
    ::close(fd);
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("cannot listen on ", path, ": ",
                                  std::strerror(err)));
  }
  return std::unique_ptr<EnclaveSocketServer>(
      new EnclaveSocketServer(fd, path, std::move(service)));
}

EnclaveSocketServer::~EnclaveSocketServer() {
  Stop();
  std::vector<std::thread> threads;
  {
    std::lock_guard<std::mutex> lock(conn_mu_);
    threads.swap(conn_threads_);
  }
  for (std::thread& t : threads) t.join();
  for (int fd : conn_fds_) ::close(fd);
  if (listen_fd_ >= 0) ::close(listen_fd_);
  ::unlink(path_.c_str());
}

void EnclaveSocketServer::Serve() {
  while (!stopping_) {
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    std::lock_guard<std::mutex> lock(conn_mu_);
    if (stopping_) {
      ::close(fd);
      return;
    }
    conn_fds_.push_back(fd);
    conn_threads_.emplace_back([this, fd] { ServeConnection(fd); });
  }
}

void EnclaveSocketServer::ServeConnection(int fd) {
  for (;;) {
    absl::StatusOr<std::string> bytes = ReadFrameBytes(fd);
    std::string reply;
    if (!bytes.ok()) {
      // The stream cannot be resynchronized after a bad header.
      BoundaryFrame error;
      error.payload = ErrorPayload(bytes.status());
      WriteAll(fd, EncodeFrame(error));
      break;
    }
    if (bytes->empty()) break;
    {
      std::lock_guard<std::mutex> lock(service_mu_);
      reply = service_->HandleBytes(*bytes);
    }
    if (!WriteAll(fd, reply)) break;
  }
  ::shutdown(fd, SHUT_RDWR);
}

void EnclaveSocketServer::Stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  std::lock_guard<std::mutex> lock(conn_mu_);
  for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
}

}  // namespace duet

// Copyright 2026 The sessionkv Authors
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


#include "sessionkv/bench/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <vector>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {
namespace {

class InMemoryTransport final : public Transport {
 public:
  explicit InMemoryTransport(std::size_t n) : boxes_(n) {}

  void send(std::size_t to, Bytes datagram) override {
    Mailbox& b = boxes_.at(to);
    {
      std::lock_guard<std::mutex> lock(b.mu);
      b.queue.push_back(std::move(datagram));
    }
    b.cv.notify_one();
  }

  std::optional<Bytes> receive(std::size_t self, std::chrono::microseconds timeout) override {
    Mailbox& b = boxes_.at(self);
    std::unique_lock<std::mutex> lock(b.mu);
    if (b.queue.empty() && timeout.count() > 0) {
      b.cv.wait_for(lock, timeout, [&] { return !b.queue.empty(); });
    }
    if (b.queue.empty()) return std::nullopt;
    Bytes out = std::move(b.queue.front());
    b.queue.pop_front();
    return out;
  }

  std::uint64_t dropped() const override { return 0; }
  std::size_t endpoints() const override { return boxes_.size(); }

 private:
  struct Mailbox {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Bytes> queue;
  };
  std::vector<Mailbox> boxes_;
};

class UdpTransport final : public Transport {
 public:
  explicit UdpTransport(std::size_t n) {
    try {
      for (std::size_t i = 0; i < n; ++i) {
        const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
        if (fd < 0) throw IoError(std::string("udp socket: ") + std::strerror(errno));
        fds_.push_back(fd);
        int buf = 8 << 20;
        (void)::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &buf, sizeof buf);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        addr.sin_port = 0;
        if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
          throw IoError(std::string("udp bind 127.0.0.1: ") + std::strerror(errno));
        }
        socklen_t len = sizeof addr;
        if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
          throw IoError(std::string("udp getsockname: ") + std::strerror(errno));
        }
        addrs_.push_back(addr);
      }
      send_fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
      if (send_fd_ < 0) throw IoError(std::string("udp socket: ") + std::strerror(errno));
    } catch (...) {
      close_all();
      throw;
    }
  }

  ~UdpTransport() override { close_all(); }

  UdpTransport(const UdpTransport&) = delete;
  UdpTransport& operator=(const UdpTransport&) = delete;

  void send(std::size_t to, Bytes datagram) override {
    if (datagram.size() > kMaxDatagram) {
      ++dropped_;
      return;
    }
    const sockaddr_in& addr = addrs_.at(to);
    const ssize_t n = ::sendto(send_fd_, datagram.data(), datagram.size(), 0,
                               reinterpret_cast<const sockaddr*>(&addr), sizeof addr);
    if (n != static_cast<ssize_t>(datagram.size())) ++dropped_;
  }

  std::optional<Bytes> receive(std::size_t self, std::chrono::microseconds timeout) override {
    const int fd = fds_.at(self);
    pollfd p{fd, POLLIN, 0};
    const int ms = static_cast<int>((timeout.count() + 999) / 1000);
    if (::poll(&p, 1, ms) <= 0 || (p.revents & POLLIN) == 0) return std::nullopt;
    Bytes buf(kMaxDatagram, '\0');
    const ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
    if (n < 0) return std::nullopt;
    buf.resize(static_cast<std::size_t>(n));
    return buf;
  }

  std::uint64_t dropped() const override { return dropped_.load(); }
  std::size_t endpoints() const override { return fds_.size(); }

 private:
  void close_all() {
    for (int fd : fds_) ::close(fd);
    fds_.clear();
    if (send_fd_ >= 0) ::close(send_fd_);
    send_fd_ = -1;
  }

  std::vector<int> fds_;
  std::vector<sockaddr_in> addrs_;
  int send_fd_ = -1;
  std::atomic<std::uint64_t> dropped_{0};
};

}  // namespace

const char* transport_name(TransportKind k) {
  switch (k) {
    case TransportKind::kInMemory:
      return "inmemory";
    case TransportKind::kUdpLoopback:
      return "udp";
  }
  return "?";
}

TransportKind parse_transport(const std::string& name) {
  if (name == "inmemory") return TransportKind::kInMemory;
  if (name == "udp") return TransportKind::kUdpLoopback;
  throw InvalidArgument("unknown transport `" + name + "` (expected inmemory or udp)");
}

std::unique_ptr<Transport> make_transport(TransportKind kind, std::size_t endpoints) {
  if (kind == TransportKind::kUdpLoopback) return std::make_unique<UdpTransport>(endpoints);
  return std::make_unique<InMemoryTransport>(endpoints);
}

}  // namespace sessionkv

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


// Datagram transports between bench endpoints. Endpoints are dense indices;
// the harness assigns replicas first, then workers.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "sessionkv/kernel/encoding.hpp"

namespace sessionkv {

enum class TransportKind : std::uint8_t { kInMemory = 0, kUdpLoopback = 1 };

[[nodiscard]] const char* transport_name(TransportKind k);
/// Accepts "inmemory" and "udp". Throws InvalidArgument naming the token.
[[nodiscard]] TransportKind parse_transport(const std::string& name);

class Transport {
 public:
  virtual ~Transport() = default;

  /// Best effort for UDP; never drops for InMemory.
  virtual void send(std::size_t to, Bytes datagram) = 0;
  /// Waits up to `timeout` for one datagram addressed to `self`.
  virtual std::optional<Bytes> receive(std::size_t self, std::chrono::microseconds timeout) = 0;

  [[nodiscard]] virtual std::uint64_t dropped() const = 0;
  [[nodiscard]] virtual std::size_t endpoints() const = 0;
};

/// Largest payload a loopback datagram may carry.
inline constexpr std::size_t kMaxDatagram = 65'507;

/// Throws IoError if a socket cannot be created or bound.
[[nodiscard]] std::unique_ptr<Transport> make_transport(TransportKind kind, std::size_t endpoints);

}  // namespace sessionkv

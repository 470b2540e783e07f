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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>

namespace sessionkv {

/// Integer wrapper that keeps keys, values, clients and replicas from being
/// mixed up at call sites. Ordering and hashing follow the wrapped integer.
template <class Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const StrongId&) const = default;
};

struct KeyTag {};
struct ValueTag {};
struct ClientTag {};
struct ReplicaTag {};
struct LabelTag {};
struct VariableTag {};

using Key = StrongId<KeyTag>;
using Value = StrongId<ValueTag>;
using ClientId = StrongId<ClientTag>;
using ReplicaId = StrongId<ReplicaTag>;
using TopicLabel = StrongId<LabelTag>;
using Variable = StrongId<VariableTag>;

/// The phantom client that owns every initial store entry. It never runs a
/// program.
inline constexpr ClientId kInitialClient{0};

/// Put timestamp. Zero means "no put yet"; client-issued puts start at one.
struct Timestamp {
  std::uint32_t value = 0;

  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::uint32_t v) : value(v) {}

  [[nodiscard]] constexpr Timestamp next() const { return Timestamp{value + 1}; }

  constexpr auto operator<=>(const Timestamp&) const = default;
};

/// Unique operation identifier: per-client sequence number starting at 1.
struct OpId {
  ClientId client;
  std::uint32_t sequence = 0;

  constexpr auto operator<=>(const OpId&) const = default;
};

/// Empty payload / state.
struct Unit {
  constexpr auto operator<=>(const Unit&) const = default;
};

/// Sizes of the finite domains a protocol instance is configured over.
/// Real clients are 1..clients; replicas are 1..replicas; keys are
/// 0..keys-1; values are 0..values-1.
struct Domain {
  std::uint32_t clients = 2;
  std::uint32_t replicas = 2;
  std::uint32_t keys = 2;
  std::uint32_t values = 3;

  constexpr auto operator<=>(const Domain&) const = default;

  /// Number of vector-clock slots, including the initial client.
  [[nodiscard]] constexpr std::size_t clock_width() const { return std::size_t{clients} + 1; }
};

std::string to_string(Key k);
std::string to_string(Value v);
std::string to_string(ClientId c);
std::string to_string(ReplicaId r);

}  // namespace sessionkv

template <class Tag>
struct std::hash<sessionkv::StrongId<Tag>> {
  std::size_t operator()(const sessionkv::StrongId<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

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

#include <variant>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

template <class Payload>
struct GetRequest {
  ClientId from;
  ReplicaId to;
  OpId op;
  Key key;
  Payload payload;

  SESSIONKV_FIELDS(from, to, op, key, payload)
  auto operator<=>(const GetRequest&) const = default;
};

template <class Payload>
struct GetResponse {
  ReplicaId from;
  ClientId to;
  OpId op;
  Key key;
  Value value;
  Payload payload;

  SESSIONKV_FIELDS(from, to, op, key, value, payload)
  auto operator<=>(const GetResponse&) const = default;
};

template <class Payload>
struct PutRequest {
  ClientId from;
  ReplicaId to;
  Key key;
  Value value;
  Payload payload;

  SESSIONKV_FIELDS(from, to, key, value, payload)
  auto operator<=>(const PutRequest&) const = default;
};

template <class GetPayload, class ResPayload, class PutPayload>
using Message = std::variant<GetRequest<GetPayload>, GetResponse<ResPayload>, PutRequest<PutPayload>>;

/// Protocol-erased message: payloads travel as their canonical encoding.
using WireMessage = Message<Bytes, Bytes, Bytes>;

template <class G, class R, class P>
WireMessage to_wire(const Message<G, R, P>& m) {
  return std::visit(
      [](const auto& x) -> WireMessage {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GetRequest<G>>) {
          return GetRequest<Bytes>{x.from, x.to, x.op, x.key, to_bytes(x.payload)};
        } else if constexpr (std::is_same_v<T, GetResponse<R>>) {
          return GetResponse<Bytes>{x.from, x.to, x.op, x.key, x.value, to_bytes(x.payload)};
        } else {
          return PutRequest<Bytes>{x.from, x.to, x.key, x.value, to_bytes(x.payload)};
        }
      },
      m);
}

template <class G, class R, class P>
Message<G, R, P> from_wire(const WireMessage& m) {
  return std::visit(
      [](const auto& x) -> Message<G, R, P> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GetRequest<Bytes>>) {
          return GetRequest<G>{x.from, x.to, x.op, x.key, from_bytes<G>(x.payload)};
        } else if constexpr (std::is_same_v<T, GetResponse<Bytes>>) {
          return GetResponse<R>{x.from, x.to, x.op, x.key, x.value, from_bytes<R>(x.payload)};
        } else {
          return PutRequest<P>{x.from, x.to, x.key, x.value, from_bytes<P>(x.payload)};
        }
      },
      m);
}

/// Datagram framing used by the benchmark transports.
Bytes encode_wire(const WireMessage& m);
WireMessage decode_wire(std::string_view b);

}  // namespace sessionkv

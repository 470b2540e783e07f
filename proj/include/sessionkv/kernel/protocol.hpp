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

// The protocol interface.
//
// A protocol is a value type exposing two initializers and seven methods.
// Methods that change state take it by value and return the successor. Guards
// take state by const reference and cannot mutate it. No method may consult
// anything but its arguments and the protocol's immutable configuration.

#pragma once

#include <concepts>
#include <string>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/message.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

/// Result of get-req and put-req.
template <class Payload, class ClientState>
struct Request {
  Payload payload;
  ClientState state;
};

/// Result of get at a replica.
template <class Payload, class ReplicaState>
struct Served {
  Value value;
  Payload payload;
  ReplicaState state;
};

template <class T>
concept Encodable = requires(Encoder& e, const T& x) { encode(e, x); };

template <class P>
concept Protocol =
    std::copy_constructible<P> && Encodable<typename P::ClientState> && Encodable<typename P::ReplicaState> &&
    Encodable<typename P::GetPayload> && Encodable<typename P::ResPayload> && Encodable<typename P::PutPayload> &&
    requires(const P& p, ClientId c, ReplicaId r, Key k, Value v, typename P::ClientState cs,
             typename P::ReplicaState rs, const typename P::GetPayload& gp, const typename P::ResPayload& rp,
             const typename P::PutPayload& pp) {
      { p.name() } -> std::convertible_to<std::string>;
      { p.domain() } -> std::convertible_to<Domain>;
      { p.client_init(c) } -> std::same_as<typename P::ClientState>;
      { p.replica_init(r, v) } -> std::same_as<typename P::ReplicaState>;
      { p.get_req(k, c, cs) } -> std::same_as<Request<typename P::GetPayload, typename P::ClientState>>;
      { p.get_guard(k, gp, c, r, rs) } -> std::same_as<bool>;
      { p.get(k, gp, c, r, rs) } -> std::same_as<Served<typename P::ResPayload, typename P::ReplicaState>>;
      { p.get_res(k, v, rp, c, cs) } -> std::same_as<typename P::ClientState>;
      { p.put_req(k, v, c, cs) } -> std::same_as<Request<typename P::PutPayload, typename P::ClientState>>;
      { p.put_guard(k, v, pp, c, r, rs) } -> std::same_as<bool>;
      { p.put(k, v, pp, c, r, rs) } -> std::same_as<typename P::ReplicaState>;
    };

template <Protocol P>
using MessageOf = Message<typename P::GetPayload, typename P::ResPayload, typename P::PutPayload>;

}  // namespace sessionkv

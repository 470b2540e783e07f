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

#include <string>

#include "sessionkv/kernel/protocol.hpp"
#include "sessionkv/protocols/base.hpp"

namespace sessionkv {

/// No guarantee: any replica answers with whatever it holds and applies
/// puts in arrival order.
class Relaxed : public ProtocolBase {
 public:
  using ClientState = Unit;
  using ReplicaState = KeyStore<Value>;
  using GetPayload = Unit;
  using ResPayload = Unit;
  using PutPayload = Unit;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "relaxed"; }

  ClientState client_init(ClientId) const { return {}; }
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(v0); }

  Request<GetPayload, ClientState> get_req(Key, ClientId, ClientState s) const { return {Unit{}, s}; }
  bool get_guard(Key, const GetPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.lookup(k);
    return {v, Unit{}, std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload&, ClientId, ClientState s) const { return s; }

  Request<PutPayload, ClientState> put_req(Key, Value, ClientId, ClientState s) const { return {Unit{}, s}; }
  bool put_guard(Key, Value, const PutPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  ReplicaState put(Key k, Value v, const PutPayload&, ClientId, ReplicaId, ReplicaState s) const {
    s.set(k, v);
    return s;
  }
};

}  // namespace sessionkv

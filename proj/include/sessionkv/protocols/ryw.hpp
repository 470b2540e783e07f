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


// Read-your-writes: specification and implementation.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sessionkv/kernel/protocol.hpp"
#include "sessionkv/protocols/base.hpp"
#include "sessionkv/protocols/sorted_set.hpp"

namespace sessionkv {

/// (t, k): one put of the session, identified by its timestamp.
using SessionPut = std::pair<Timestamp, Key>;

/// p|k over session puts: the timestamps of puts on k.
[[nodiscard]] inline SortedSet<Timestamp> puts_on(const SortedSet<SessionPut>& p, Key k) {
  SortedSet<Timestamp> out;
  for (const auto& [t, key] : p) {
    if (key == k) out.insert(t);
  }
  return out;
}

class RywSpec : public ProtocolBase {
 public:
  struct Entry {
    Value value;
    ClientId origin;
    Timestamp ts;
    SortedSet<Timestamp> prior;  // origin's earlier puts on the same key

    SESSIONKV_FIELDS(value, origin, ts, prior)
    auto operator<=>(const Entry&) const = default;
  };
  struct PutPayload {
    Timestamp ts;
    SortedSet<Timestamp> prior;

    SESSIONKV_FIELDS(ts, prior)
    auto operator<=>(const PutPayload&) const = default;
  };

  using ClientState = SortedSet<SessionPut>;
  using ReplicaState = KeyStore<Entry>;
  using GetPayload = SortedSet<Timestamp>;
  using ResPayload = Unit;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "ryw_spec"; }

  ClientState client_init(ClientId) const { return {}; }
  ReplicaState replica_init(ReplicaId, Value v0) const {
    return make_store(Entry{v0, kInitialClient, Timestamp{0}, {}});
  }

  Request<GetPayload, ClientState> get_req(Key k, ClientId, ClientState p) const {
    GetPayload payload = puts_on(p, k);
    return {std::move(payload), std::move(p)};
  }
  bool get_guard(Key k, const GetPayload& p, ClientId c, ReplicaId, const ReplicaState& s) const {
    const Entry& e = s.lookup(k);
    if (c != e.origin) return true;
    SortedSet<Timestamp> seen = e.prior;
    seen.insert(e.ts);
    return is_subset(p, seen);
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.lookup(k).value;
    return {v, Unit{}, std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload&, ClientId, ClientState p) const { return p; }

  Request<PutPayload, ClientState> put_req(Key k, Value, ClientId, ClientState p) const {
    const Timestamp t{static_cast<std::uint32_t>(p.size()) + 1};
    PutPayload payload{t, puts_on(p, k)};
    p.insert({t, k});
    return {std::move(payload), std::move(p)};
  }
  bool put_guard(Key, Value, const PutPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  ReplicaState put(Key k, Value v, const PutPayload& pl, ClientId c, ReplicaId, ReplicaState s) const {
    s.set(k, Entry{v, c, pl.ts, pl.prior});
    return s;
  }
};

class RywImpl : public ProtocolBase {
 public:
  struct Entry {
    Value value;
    ClientId origin;
    Timestamp ts;

    SESSIONKV_FIELDS(value, origin, ts)
    auto operator<=>(const Entry&) const = default;
  };

  /// K ↦ T: the session's latest put timestamp per key.
  using ClientState = std::vector<Timestamp>;
  using ReplicaState = KeyStore<Entry>;
  using GetPayload = Timestamp;
  using ResPayload = Unit;
  using PutPayload = Timestamp;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "ryw_impl"; }

  ClientState client_init(ClientId) const { return zero_per_key(); }
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(Entry{v0, kInitialClient, Timestamp{0}}); }

  Request<GetPayload, ClientState> get_req(Key k, ClientId, ClientState p) const {
    const Timestamp t = p.at(k.value);
    return {t, std::move(p)};
  }
  bool get_guard(Key k, const GetPayload& t, ClientId c, ReplicaId, const ReplicaState& s) const {
    const Entry& e = s.lookup(k);
    return c != e.origin || t == e.ts;
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.lookup(k).value;
    return {v, Unit{}, std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload&, ClientId, ClientState p) const { return p; }

  Request<PutPayload, ClientState> put_req(Key k, Value, ClientId, ClientState p) const {
    const Timestamp t = p.at(k.value).next();
    p.at(k.value) = t;
    return {t, std::move(p)};
  }
  bool put_guard(Key, Value, const PutPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  ReplicaState put(Key k, Value v, const PutPayload& t, ClientId c, ReplicaId, ReplicaState s) const {
    s.set(k, Entry{v, c, t});
    return s;
  }
};

}  // namespace sessionkv

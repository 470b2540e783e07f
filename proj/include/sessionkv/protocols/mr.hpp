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


// Monotonic reads: specification and implementation.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sessionkv/kernel/protocol.hpp"
#include "sessionkv/protocols/base.hpp"
#include "sessionkv/protocols/dep_set.hpp"
#include "sessionkv/protocols/ryw.hpp"
#include "sessionkv/protocols/sorted_set.hpp"
#include "sessionkv/protocols/vector_clock.hpp"

namespace sessionkv {

/// (c, t): the origin of a stored put.
struct Origin {
  ClientId client;
  Timestamp ts;

  SESSIONKV_FIELDS(client, ts)
  auto operator<=>(const Origin&) const = default;
};

class MrSpec : public ProtocolBase {
 public:
  struct ClientState {
    SortedSet<SessionPut> puts;
    DepSet<DepEntry> deps;  // puts observed by this session's gets

    SESSIONKV_FIELDS(puts, deps)
    auto operator<=>(const ClientState&) const = default;
  };
  struct Entry {
    Value value;
    ClientId origin;
    Timestamp ts;
    SortedSet<SessionPut> prior;  // all of the origin's earlier puts

    SESSIONKV_FIELDS(value, origin, ts, prior)
    auto operator<=>(const Entry&) const = default;
  };
  struct PutPayload {
    Timestamp ts;
    SortedSet<SessionPut> prior;

    SESSIONKV_FIELDS(ts, prior)
    auto operator<=>(const PutPayload&) const = default;
  };

  using ReplicaState = KeyStore<Entry>;
  using GetPayload = SortedSet<Origin>;
  using ResPayload = Origin;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "mr_spec"; }

  ClientState client_init(ClientId) const { return {}; }
  ReplicaState replica_init(ReplicaId, Value v0) const {
    return make_store(Entry{v0, kInitialClient, Timestamp{0}, {}});
  }

  Request<GetPayload, ClientState> get_req(Key k, ClientId, ClientState s) const {
    GetPayload payload;
    for (const DepEntry& e : s.deps) {
      if (e.key == k) payload.insert(Origin{e.client, e.ts});
    }
    return {std::move(payload), std::move(s)};
  }
  bool get_guard(Key k, const GetPayload& d, ClientId, ReplicaId, const ReplicaState& s) const {
    const Entry& e = s.lookup(k);
    // d|c' ⊆ d'|k ∪ {t'}
    for (const Origin& o : d) {
      if (o.client != e.origin || o.ts == e.ts) continue;
      if (!e.prior.contains(SessionPut{o.ts, k})) return false;
    }
    return true;
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Entry& e = s.lookup(k);
    Served<ResPayload, ReplicaState> out{e.value, Origin{e.origin, e.ts}, {}};
    out.state = std::move(s);
    return out;
  }
  ClientState get_res(Key k, Value, const ResPayload& o, ClientId, ClientState s) const {
    s.deps.insert(DepEntry{o.client, o.ts, k});
    return s;
  }

  Request<PutPayload, ClientState> put_req(Key k, Value, ClientId, ClientState s) const {
    const Timestamp t{static_cast<std::uint32_t>(s.puts.size()) + 1};
    PutPayload payload{t, s.puts};
    s.puts.insert({t, k});
    return {std::move(payload), std::move(s)};
  }
  bool put_guard(Key, Value, const PutPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  ReplicaState put(Key k, Value v, const PutPayload& pl, ClientId c, ReplicaId, ReplicaState s) const {
    s.set(k, Entry{v, c, pl.ts, pl.prior});
    return s;
  }
};

class MrImpl : public ProtocolBase {
 public:
  struct ClientState {
    Timestamp ts;                  // latest put of the session
    std::vector<VectorClock> read;  // K ↦ C ↦ T: largest timestamp read per key and origin

    SESSIONKV_FIELDS(ts, read)
    auto operator<=>(const ClientState&) const = default;
  };
  struct Entry {
    Value value;
    ClientId origin;
    Timestamp ts;

    SESSIONKV_FIELDS(value, origin, ts)
    auto operator<=>(const Entry&) const = default;
  };

  using ReplicaState = KeyStore<Entry>;
  using GetPayload = VectorClock;
  using ResPayload = Origin;
  using PutPayload = Timestamp;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "mr_impl"; }

  ClientState client_init(ClientId) const {
    return ClientState{Timestamp{0}, std::vector<VectorClock>(domain().keys, zero_clock())};
  }
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(Entry{v0, kInitialClient, Timestamp{0}}); }

  Request<GetPayload, ClientState> get_req(Key k, ClientId, ClientState s) const {
    GetPayload payload = s.read.at(k.value);
    return {std::move(payload), std::move(s)};
  }
  bool get_guard(Key k, const GetPayload& d, ClientId, ReplicaId, const ReplicaState& s) const {
    const Entry& e = s.lookup(k);
    return d[e.origin] <= e.ts;
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Entry& e = s.lookup(k);
    Served<ResPayload, ReplicaState> out{e.value, Origin{e.origin, e.ts}, {}};
    out.state = std::move(s);
    return out;
  }
  ClientState get_res(Key k, Value, const ResPayload& o, ClientId, ClientState s) const {
    // The response timestamp goes into the map; the session timestamp is kept.
    s.read.at(k.value).set(o.client, o.ts);
    return s;
  }

  Request<PutPayload, ClientState> put_req(Key, Value, ClientId, ClientState s) const {
    s.ts = s.ts.next();
    const Timestamp t = s.ts;
    return {t, std::move(s)};
  }
  bool put_guard(Key, Value, const PutPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  ReplicaState put(Key k, Value v, const PutPayload& t, ClientId c, ReplicaId, ReplicaState s) const {
    s.set(k, Entry{v, c, t});
    return s;
  }
};

}  // namespace sessionkv

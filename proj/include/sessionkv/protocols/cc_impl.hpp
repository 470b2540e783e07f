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


// Causal consistency implementations: a vector-clock protocol and a
// dependency-list protocol.

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sessionkv/kernel/protocol.hpp"
#include "sessionkv/protocols/base.hpp"
#include "sessionkv/protocols/mr.hpp"
#include "sessionkv/protocols/vector_clock.hpp"

namespace sessionkv {

class CcImplVc : public ProtocolBase {
 public:
  struct ReplicaState {
    KeyStore<Value> store;
    VectorClock received;  // one clock for all keys

    SESSIONKV_FIELDS(store, received)
  };

  using ClientState = VectorClock;
  using GetPayload = VectorClock;
  using ResPayload = VectorClock;
  using PutPayload = VectorClock;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "cc_impl_vc"; }

  ClientState client_init(ClientId) const { return zero_clock(); }
  ReplicaState replica_init(ReplicaId, Value v0) const { return ReplicaState{make_store(v0), zero_clock()}; }

  Request<GetPayload, ClientState> get_req(Key, ClientId, ClientState d) const {
    GetPayload payload = d;
    return {std::move(payload), std::move(d)};
  }
  bool get_guard(Key, const GetPayload& d, ClientId, ReplicaId, const ReplicaState& s) const {
    return vc_leq(d, s.received);
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.store.lookup(k);
    ResPayload r = s.received;
    return {v, std::move(r), std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload& r, ClientId, ClientState d) const { return vc_max(d, r); }

  Request<PutPayload, ClientState> put_req(Key, Value, ClientId self, ClientState d) const {
    PutPayload payload = d;
    d.set(self, d[self].next());
    return {std::move(payload), std::move(d)};
  }
  bool put_guard(Key, Value, const PutPayload& d, ClientId c, ReplicaId, const ReplicaState& s) const {
    return vc_leq(d, s.received) && s.received[c] == d[c];
  }
  ReplicaState put(Key k, Value v, const PutPayload& d, ClientId c, ReplicaId, ReplicaState s) const {
    s.received.set(c, d[c].next());
    s.store.set(k, v);
    return s;
  }
};

class CcImplLf : public ProtocolBase {
 public:
  struct ClientState {
    Timestamp ts;
    std::vector<Origin> deps;  // a list; appends may repeat entries

    SESSIONKV_FIELDS(ts, deps)
    auto operator<=>(const ClientState&) const = default;
  };
  struct Entry {
    ClientId origin;
    Timestamp ts;
    Value value;

    SESSIONKV_FIELDS(origin, ts, value)
    auto operator<=>(const Entry&) const = default;
  };
  struct ReplicaState {
    KeyStore<Entry> store;
    VectorClock received;

    SESSIONKV_FIELDS(store, received)
  };

  using GetPayload = std::vector<Origin>;
  using ResPayload = Origin;
  using PutPayload = std::vector<Origin>;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "cc_impl_lf"; }

  /// Largest timestamp recorded for `c` in `d`, or 0.
  [[nodiscard]] static Timestamp lookup(ClientId c, const std::vector<Origin>& d, Timestamp fallback) {
    Timestamp best = fallback;
    bool found = false;
    for (const Origin& o : d) {
      if (o.client != c) continue;
      best = found ? std::max(best, o.ts) : o.ts;
      found = true;
    }
    return best;
  }

  ClientState client_init(ClientId) const { return {}; }
  ReplicaState replica_init(ReplicaId, Value v0) const {
    return ReplicaState{make_store(Entry{kInitialClient, Timestamp{0}, v0}), zero_clock()};
  }

  Request<GetPayload, ClientState> get_req(Key, ClientId, ClientState s) const {
    GetPayload payload = s.deps;
    return {std::move(payload), std::move(s)};
  }
  bool get_guard(Key, const GetPayload& d, ClientId, ReplicaId, const ReplicaState& s) const {
    return satisfied(d, s.received);
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Entry& e = s.store.lookup(k);
    Served<ResPayload, ReplicaState> out{e.value, Origin{e.origin, e.ts}, {}};
    out.state = std::move(s);
    return out;
  }
  ClientState get_res(Key, Value, const ResPayload& o, ClientId, ClientState s) const {
    s.deps.push_back(o);
    return s;
  }

  Request<PutPayload, ClientState> put_req(Key, Value, ClientId c, ClientState s) const {
    const Timestamp t = s.ts.next();
    PutPayload payload = std::move(s.deps);
    return {std::move(payload), ClientState{t, {Origin{c, t}}}};
  }
  bool put_guard(Key, Value, const PutPayload& d, ClientId c, ReplicaId, const ReplicaState& s) const {
    return satisfied(d, s.received) && lookup(c, d, Timestamp{0}) == s.received[c];
  }
  ReplicaState put(Key k, Value v, const PutPayload&, ClientId c, ReplicaId, ReplicaState s) const {
    const Timestamp t = s.received[c].next();
    s.received.set(c, t);
    s.store.set(k, Entry{c, t, v});
    return s;
  }

 private:
  static bool satisfied(const std::vector<Origin>& d, const VectorClock& r) {
    return std::all_of(d.begin(), d.end(), [&](const Origin& o) { return r[o.client] >= o.ts; });
  }
};

}  // namespace sessionkv

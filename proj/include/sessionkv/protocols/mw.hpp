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


// Monotonic writes: specification, implementation, and the combined
// read-your-writes + monotonic-writes implementation.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sessionkv/kernel/protocol.hpp"
#include "sessionkv/protocols/base.hpp"
#include "sessionkv/protocols/mr.hpp"
#include "sessionkv/protocols/ryw.hpp"
#include "sessionkv/protocols/sorted_set.hpp"
#include "sessionkv/protocols/vector_clock.hpp"

namespace sessionkv {

class MwSpec : public ProtocolBase {
 public:
  struct Entry {
    Value value;
    SortedSet<Origin> applied;  // every put applied to this key so far

    SESSIONKV_FIELDS(value, applied)
    auto operator<=>(const Entry&) const = default;
  };
  struct PutPayload {
    Timestamp ts;
    SortedSet<Timestamp> prior;  // the session's earlier puts on the key

    SESSIONKV_FIELDS(ts, prior)
    auto operator<=>(const PutPayload&) const = default;
  };

  using ClientState = SortedSet<SessionPut>;
  using ReplicaState = KeyStore<Entry>;
  using GetPayload = Unit;
  using ResPayload = Unit;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "mw_spec"; }

  ClientState client_init(ClientId) const { return {}; }
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(Entry{v0, {}}); }

  Request<GetPayload, ClientState> get_req(Key, ClientId, ClientState p) const { return {Unit{}, std::move(p)}; }
  bool get_guard(Key, const GetPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
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
  bool put_guard(Key k, Value, const PutPayload& pl, ClientId c, ReplicaId, const ReplicaState& s) const {
    // p ⊆ p'|c
    const Entry& e = s.lookup(k);
    for (Timestamp t : pl.prior) {
      if (!e.applied.contains(Origin{c, t})) return false;
    }
    return true;
  }
  ReplicaState put(Key k, Value v, const PutPayload& pl, ClientId c, ReplicaId, ReplicaState s) const {
    Entry e{v, s.lookup(k).applied};
    e.applied.insert(Origin{c, pl.ts});
    s.set(k, std::move(e));
    return s;
  }
};

class MwImpl : public ProtocolBase {
 public:
  struct Entry {
    Value value;
    VectorClock applied;  // C ↦ T: next expected put per session

    SESSIONKV_FIELDS(value, applied)
    auto operator<=>(const Entry&) const = default;
  };

  using ClientState = std::vector<Timestamp>;
  using ReplicaState = KeyStore<Entry>;
  using GetPayload = Unit;
  using ResPayload = Unit;
  using PutPayload = Timestamp;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "mw_impl"; }

  ClientState client_init(ClientId) const { return zero_per_key(); }
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(Entry{v0, zero_clock()}); }

  Request<GetPayload, ClientState> get_req(Key, ClientId, ClientState p) const { return {Unit{}, std::move(p)}; }
  bool get_guard(Key, const GetPayload&, ClientId, ReplicaId, const ReplicaState&) const { return true; }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.lookup(k).value;
    return {v, Unit{}, std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload&, ClientId, ClientState p) const { return p; }

  Request<PutPayload, ClientState> put_req(Key k, Value, ClientId, ClientState p) const {
    const Timestamp t = p.at(k.value);
    p.at(k.value) = t.next();
    return {t, std::move(p)};
  }
  bool put_guard(Key k, Value, const PutPayload& t, ClientId c, ReplicaId, const ReplicaState& s) const {
    return s.lookup(k).applied[c] == t;
  }
  ReplicaState put(Key k, Value v, const PutPayload& t, ClientId c, ReplicaId, ReplicaState s) const {
    Entry e{v, s.lookup(k).applied};
    e.applied.set(c, t.next());
    s.set(k, std::move(e));
    return s;
  }
};

class RywMwImpl : public ProtocolBase {
 public:
  struct Entry {
    Value value;
    ClientId origin;
    VectorClock applied;

    SESSIONKV_FIELDS(value, origin, applied)
    auto operator<=>(const Entry&) const = default;
  };

  using ClientState = std::vector<Timestamp>;
  using ReplicaState = KeyStore<Entry>;
  using GetPayload = Timestamp;
  using ResPayload = Unit;
  using PutPayload = Timestamp;

  using ProtocolBase::ProtocolBase;

  [[nodiscard]] std::string name() const { return "ryw_mw_impl"; }

  ClientState client_init(ClientId) const { return zero_per_key(); }
  // The initial origin is the phantom client c0.
  ReplicaState replica_init(ReplicaId, Value v0) const { return make_store(Entry{v0, kInitialClient, zero_clock()}); }

  Request<GetPayload, ClientState> get_req(Key k, ClientId, ClientState p) const {
    const Timestamp t = p.at(k.value);
    return {t, std::move(p)};
  }
  bool get_guard(Key k, const GetPayload& t, ClientId c, ReplicaId, const ReplicaState& s) const {
    const Entry& e = s.lookup(k);
    return c != e.origin || e.applied[e.origin] == t;
  }
  Served<ResPayload, ReplicaState> get(Key k, const GetPayload&, ClientId, ReplicaId, ReplicaState s) const {
    const Value v = s.lookup(k).value;
    return {v, Unit{}, std::move(s)};
  }
  ClientState get_res(Key, Value, const ResPayload&, ClientId, ClientState p) const { return p; }

  Request<PutPayload, ClientState> put_req(Key k, Value, ClientId, ClientState p) const {
    const Timestamp t = p.at(k.value);
    p.at(k.value) = t.next();
    return {t, std::move(p)};
  }
  bool put_guard(Key k, Value, const PutPayload& t, ClientId c, ReplicaId, const ReplicaState& s) const {
    return s.lookup(k).applied[c] == t;
  }
  ReplicaState put(Key k, Value v, const PutPayload& t, ClientId c, ReplicaId, ReplicaState s) const {
    Entry e{v, c, s.lookup(k).applied};
    e.applied.set(c, t.next());
    s.set(k, std::move(e));
    return s;
  }
};

}  // namespace sessionkv

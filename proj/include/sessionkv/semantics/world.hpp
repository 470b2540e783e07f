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


// Worlds and the five transition rules.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/label.hpp"
#include "sessionkv/kernel/overloaded.hpp"
#include "sessionkv/kernel/program.hpp"
#include "sessionkv/kernel/protocol.hpp"

namespace sessionkv {

template <Protocol P>
struct ClientRuntime {
  typename P::ClientState state;
  Program program;
  /// Canonical encoding of (state, program); kept in sync by the rules.
  Bytes encoding;

  void refresh() {
    Encoder e;
    encode(e, state);
    encode(e, program);
    encoding = std::move(e).take();
  }
};

template <Protocol P>
struct ReplicaRuntime {
  typename P::ReplicaState state;
  Bytes encoding;

  void refresh() { encoding = to_bytes(state); }
};

/// One distinct message in the network together with its multiplicity.
template <Protocol P>
struct NetworkSlot {
  Bytes key;  // canonical encoding of `message`
  MessageOf<P> message;
  std::uint32_t count = 0;
};

template <Protocol P>
struct World {
  std::vector<std::pair<ClientId, ClientRuntime<P>>> clients;    // sorted by id
  std::vector<std::pair<ReplicaId, ReplicaRuntime<P>>> replicas;  // sorted by id
  std::vector<NetworkSlot<P>> network;                           // sorted by key

  [[nodiscard]] std::size_t network_size() const {
    std::size_t n = 0;
    for (const auto& s : network) n += s.count;
    return n;
  }

  [[nodiscard]] bool programs_done() const {
    return std::all_of(clients.begin(), clients.end(), [](const auto& c) { return c.second.program.empty(); });
  }

  /// Empty network and every program reduced to skip.
  [[nodiscard]] bool quiescent() const { return network.empty() && programs_done(); }

  [[nodiscard]] Bytes canonical() const {
    Encoder e;
    e.u32(static_cast<std::uint32_t>(clients.size()));
    for (const auto& [id, c] : clients) {
      encode(e, id);
      e.bytes(c.encoding);
    }
    e.u32(static_cast<std::uint32_t>(replicas.size()));
    for (const auto& [id, r] : replicas) {
      encode(e, id);
      e.bytes(r.encoding);
    }
    e.u32(static_cast<std::uint32_t>(network.size()));
    for (const auto& s : network) {
      e.bytes(s.key);
      e.u32(s.count);
    }
    return std::move(e).take();
  }

  ClientRuntime<P>& client(ClientId c) { return find(clients, c, "client"); }
  const ClientRuntime<P>& client(ClientId c) const { return find(clients, c, "client"); }
  ReplicaRuntime<P>& replica(ReplicaId r) { return find(replicas, r, "replica"); }
  const ReplicaRuntime<P>& replica(ReplicaId r) const { return find(replicas, r, "replica"); }

  void send(MessageOf<P> m) {
    Bytes key = to_bytes(m);
    auto it = std::lower_bound(network.begin(), network.end(), key,
                               [](const NetworkSlot<P>& s, const Bytes& k) { return s.key < k; });
    if (it != network.end() && it->key == key) {
      ++it->count;
    } else {
      network.insert(it, NetworkSlot<P>{std::move(key), std::move(m), 1});
    }
  }

  const NetworkSlot<P>* slot(const Bytes& key) const {
    auto it = std::lower_bound(network.begin(), network.end(), key,
                               [](const NetworkSlot<P>& s, const Bytes& k) { return s.key < k; });
    return it != network.end() && it->key == key ? &*it : nullptr;
  }

  /// Removes one copy of the message with canonical encoding `key`.
  MessageOf<P> receive(const Bytes& key) {
    auto it = std::lower_bound(network.begin(), network.end(), key,
                               [](const NetworkSlot<P>& s, const Bytes& k) { return s.key < k; });
    SESSIONKV_EXPECTS(it != network.end() && it->key == key, "message not in network");
    MessageOf<P> m = it->message;
    if (--it->count == 0) network.erase(it);
    return m;
  }

 private:
  template <class V, class Id>
  static auto& find(V& v, Id id, const char* what) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const auto& e, Id x) { return e.first < x; });
    SESSIONKV_EXPECTS(it != v.end() && it->first == id, std::string("unknown ") + what + " " + to_string(id));
    return it->second;
  }
};

enum class Rule : std::uint8_t { kGetReq = 0, kGet = 1, kGetRes = 2, kPutReq = 3, kPut = 4 };

[[nodiscard]] inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::kGetReq:
      return "get-req";
    case Rule::kGet:
      return "get";
    case Rule::kGetRes:
      return "get-res";
    case Rule::kPutReq:
      return "put-req";
    case Rule::kPut:
      return "put";
  }
  return "?";
}

/// `subject` is a client id for the client rules and a replica id for Get
/// and Put. `message` is the canonical encoding of the consumed message, or
/// empty for Get-Req and Put-Req.
struct Transition {
  Rule rule = Rule::kGetReq;
  std::uint32_t subject = 0;
  Bytes message;

  auto operator<=>(const Transition&) const = default;
};

template <Protocol P>
World<P> initial_world(const P& protocol, const Application& app, Value v0, const std::vector<ReplicaId>& replicas) {
  app.validate(protocol.domain());
  if (replicas.empty()) throw InvalidArgument("replica list must not be empty");
  if (v0.value >= protocol.domain().values) throw InvalidArgument("initial value outside value domain");
  World<P> w;
  for (const auto& [c, prog] : app.programs) {
    ClientRuntime<P> rt{protocol.client_init(c), prog, {}};
    rt.refresh();
    w.clients.emplace_back(c, std::move(rt));
  }
  std::vector<ReplicaId> rs = replicas;
  std::sort(rs.begin(), rs.end());
  if (std::adjacent_find(rs.begin(), rs.end()) != rs.end()) throw InvalidArgument("duplicate replica id");
  for (ReplicaId r : rs) {
    ReplicaRuntime<P> rt{protocol.replica_init(r, v0), {}};
    rt.refresh();
    w.replicas.emplace_back(r, std::move(rt));
  }
  return w;
}

/// Replicas r1..rn for a domain.
[[nodiscard]] inline std::vector<ReplicaId> default_replicas(const Domain& d) {
  std::vector<ReplicaId> out;
  for (std::uint32_t i = 1; i <= d.replicas; ++i) out.emplace_back(i);
  return out;
}

namespace detail {

template <Protocol P>
bool message_enabled(const World<P>& w, const P& protocol, const MessageOf<P>& m) {
  return std::visit(
      Overloaded{
          [&](const GetRequest<typename P::GetPayload>& x) {
            return protocol.get_guard(x.key, x.payload, x.from, x.to, w.replica(x.to).state);
          },
          [&](const GetResponse<typename P::ResPayload>& x) {
            const Program& prog = w.client(x.to).program;
            if (prog.empty()) return false;
            const auto* b = std::get_if<BlockedGet>(&prog.front());
            return b != nullptr && b->op == x.op;
          },
          [&](const PutRequest<typename P::PutPayload>& x) {
            return protocol.put_guard(x.key, x.value, x.payload, x.from, x.to, w.replica(x.to).state);
          },
      },
      m);
}

template <class M>
std::uint32_t message_subject(const M& m) {
  return std::visit([](const auto& x) { return x.to.value; }, m);
}

inline Rule message_rule(std::size_t variant_index) {
  switch (variant_index) {
    case 0:
      return Rule::kGet;
    case 1:
      return Rule::kGetRes;
    default:
      return Rule::kPut;
  }
}

}  // namespace detail

/// Every transition whose premises hold, in (rule, subject, message) order.
template <Protocol P>
std::vector<Transition> enabled_transitions(const World<P>& w, const P& protocol) {
  std::vector<Transition> out;
  for (const auto& [c, rt] : w.clients) {
    if (rt.program.empty()) continue;
    const Statement& head = rt.program.front();
    if (std::holds_alternative<Get>(head)) {
      out.push_back(Transition{Rule::kGetReq, c.value, {}});
    } else if (std::holds_alternative<Put>(head)) {
      out.push_back(Transition{Rule::kPutReq, c.value, {}});
    }
  }
  for (const auto& s : w.network) {
    if (detail::message_enabled(w, protocol, s.message)) {
      out.push_back(Transition{detail::message_rule(s.message.index()), detail::message_subject(s.message), s.key});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Applies `t` to `w` in place and returns the emitted label. Throws
/// ContractViolation if `t` is not enabled in `w`.
template <Protocol P>
EventLabel apply_transition(World<P>& w, const Transition& t, const P& protocol) {
  using GetReqM = GetRequest<typename P::GetPayload>;
  using GetResM = GetResponse<typename P::ResPayload>;
  using PutReqM = PutRequest<typename P::PutPayload>;

  switch (t.rule) {
    case Rule::kGetReq: {
      SESSIONKV_EXPECTS(t.message.empty(), "get-req carries no message");
      const ClientId c{t.subject};
      ClientRuntime<P>& rt = w.client(c);
      SESSIONKV_EXPECTS(!rt.program.empty() && std::holds_alternative<Get>(rt.program.front()),
                        "get-req requires a get at the head of the program");
      const Get g = std::get<Get>(rt.program.front());
      auto req = protocol.get_req(g.key, c, std::move(rt.state));
      rt.state = std::move(req.state);
      rt.program.front() = BlockedGet{g.op, g.var, g.key};
      rt.refresh();
      for (const auto& [r, unused] : w.replicas) {
        (void)unused;
        w.send(GetReqM{c, r, g.op, g.key, req.payload});
      }
      return ClientGetReq{c, g.op, g.key};
    }
    case Rule::kPutReq: {
      SESSIONKV_EXPECTS(t.message.empty(), "put-req carries no message");
      const ClientId c{t.subject};
      ClientRuntime<P>& rt = w.client(c);
      SESSIONKV_EXPECTS(!rt.program.empty() && std::holds_alternative<Put>(rt.program.front()),
                        "put-req requires a put at the head of the program");
      const Put p = std::get<Put>(rt.program.front());
      const auto* v = std::get_if<Value>(&p.value);
      SESSIONKV_EXPECTS(v != nullptr, "put operand is an unbound variable");
      auto req = protocol.put_req(p.key, *v, c, std::move(rt.state));
      rt.state = std::move(req.state);
      rt.program.erase(rt.program.begin());
      rt.refresh();
      for (const auto& [r, unused] : w.replicas) {
        (void)unused;
        w.send(PutReqM{c, r, p.key, *v, req.payload});
      }
      return ClientPutReq{c, p.key, *v};
    }
    case Rule::kGet: {
      const auto* s = w.slot(t.message);
      SESSIONKV_EXPECTS(s != nullptr && std::holds_alternative<GetReqM>(s->message), "get requires a get request");
      SESSIONKV_EXPECTS(detail::message_subject(s->message) == t.subject, "get request addressed elsewhere");
      SESSIONKV_EXPECTS(detail::message_enabled(w, protocol, s->message), "get guard does not hold");
      const GetReqM m = std::get<GetReqM>(w.receive(t.message));
      ReplicaRuntime<P>& rt = w.replica(m.to);
      auto served = protocol.get(m.key, m.payload, m.from, m.to, std::move(rt.state));
      rt.state = std::move(served.state);
      rt.refresh();
      w.send(GetResM{m.to, m.from, m.op, m.key, served.value, std::move(served.payload)});
      return ReplicaGetServe{m.to, m.op, m.key, served.value};
    }
    case Rule::kGetRes: {
      const auto* s = w.slot(t.message);
      SESSIONKV_EXPECTS(s != nullptr && std::holds_alternative<GetResM>(s->message), "get-res requires a response");
      SESSIONKV_EXPECTS(detail::message_subject(s->message) == t.subject, "response addressed elsewhere");
      SESSIONKV_EXPECTS(detail::message_enabled(w, protocol, s->message), "client is not blocked on this op");
      const GetResM m = std::get<GetResM>(w.receive(t.message));
      ClientRuntime<P>& rt = w.client(m.to);
      const BlockedGet b = std::get<BlockedGet>(rt.program.front());
      rt.state = protocol.get_res(m.key, m.value, m.payload, m.to, std::move(rt.state));
      rt.program.erase(rt.program.begin());
      substitute(rt.program, b.var, m.value);
      rt.refresh();
      return ClientGetRes{m.to, m.op, m.key, m.value};
    }
    case Rule::kPut: {
      const auto* s = w.slot(t.message);
      SESSIONKV_EXPECTS(s != nullptr && std::holds_alternative<PutReqM>(s->message), "put requires a put request");
      SESSIONKV_EXPECTS(detail::message_subject(s->message) == t.subject, "put request addressed elsewhere");
      SESSIONKV_EXPECTS(detail::message_enabled(w, protocol, s->message), "put guard does not hold");
      const PutReqM m = std::get<PutReqM>(w.receive(t.message));
      ReplicaRuntime<P>& rt = w.replica(m.to);
      rt.state = protocol.put(m.key, m.value, m.payload, m.from, m.to, std::move(rt.state));
      rt.refresh();
      return ReplicaPutApply{m.to, m.key, m.value};
    }
  }
  detail::contract_failure("known rule", __FILE__, __LINE__, "unknown transition rule");
}

template <Protocol P>
std::pair<World<P>, EventLabel> step(World<P> w, const Transition& t, const P& protocol) {
  EventLabel l = apply_transition(w, t, protocol);
  return {std::move(w), std::move(l)};
}

}  // namespace sessionkv

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


#include <doctest.h>

#include <set>
#include <string>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/protocols/registry.hpp"
#include "sessionkv/semantics/explore.hpp"
#include "sessionkv/semantics/run.hpp"
#include "support/properties.hpp"

using namespace sessionkv;

static_assert(Protocol<Relaxed>);
static_assert(Protocol<RywSpec>);
static_assert(Protocol<RywImpl>);
static_assert(Protocol<MrSpec>);
static_assert(Protocol<MrImpl>);
static_assert(Protocol<MwSpec>);
static_assert(Protocol<MwImpl>);
static_assert(Protocol<RywMwImpl>);
static_assert(Protocol<CcSpec>);
static_assert(Protocol<CcImplVc>);
static_assert(Protocol<CcImplLf>);
static_assert(Protocol<LccSpec>);
static_assert(Protocol<GetGuardForcedTrue<RywImpl>>);
static_assert(Protocol<PutGuardForcedTrue<CcImplVc>>);

namespace {

const Domain kDesk{2, 2, 2, 3};

VectorClock clock(std::initializer_list<std::uint32_t> xs) {
  std::vector<Timestamp> s;
  for (auto x : xs) s.emplace_back(x);
  return VectorClock(std::move(s));
}

std::set<ExternalHistory> histories(const ProtocolDefinition& def, const Application& app, std::uint32_t bound) {
  return def.visit([&](const auto& p) {
    std::set<ExternalHistory> out;
    for (const auto& [h, s] : explore(p, app, Value{0}, default_replicas(p.domain()), bound).ext_histories) {
      out.insert(h);
    }
    return out;
  });
}

}  // namespace

TEST_CASE("ryw impl get guard") {
  const RywImpl p(kDesk, StoreKind::kAssoc);
  auto s = p.replica_init(ReplicaId{1}, Value{0});
  s.set(Key{0}, RywImpl::Entry{Value{2}, ClientId{1}, Timestamp{3}});
  CHECK(p.get_guard(Key{0}, Timestamp{3}, ClientId{1}, ReplicaId{1}, s));
  CHECK_FALSE(p.get_guard(Key{0}, Timestamp{2}, ClientId{1}, ReplicaId{1}, s));
  for (std::uint32_t t = 0; t < 5; ++t) CHECK(p.get_guard(Key{0}, Timestamp{t}, ClientId{2}, ReplicaId{1}, s));
}

TEST_CASE("cc impl 1 put guard") {
  // Slot 0 is c0; the remaining slots are c1 and c2.
  const CcImplVc p(kDesk, StoreKind::kTree);
  auto s = p.replica_init(ReplicaId{1}, Value{0});
  s.received = clock({0, 2, 0});
  CHECK(p.put_guard(Key{0}, Value{1}, clock({0, 2, 0}), ClientId{2}, ReplicaId{1}, s));
  CHECK_FALSE(p.put_guard(Key{0}, Value{1}, clock({0, 2, 1}), ClientId{2}, ReplicaId{1}, s));
  // c1's next put must carry exactly the writer's applied count.
  CHECK(p.put_guard(Key{0}, Value{1}, clock({0, 2, 0}), ClientId{1}, ReplicaId{1}, s));
  CHECK_FALSE(p.put_guard(Key{0}, Value{1}, clock({0, 1, 0}), ClientId{1}, ReplicaId{1}, s));
}

TEST_CASE("vector clock basics") {
  CHECK(vc_leq(clock({0, 0}), clock({0, 0})));
  CHECK_FALSE(vc_leq(clock({1, 0}), clock({0, 1})));
  CHECK_FALSE(vc_leq(clock({0, 1}), clock({1, 0})));
  CHECK(vc_max(clock({0, 0}), clock({0, 0})) == clock({0, 0}));
  CHECK(vc_max(clock({1, 0}), clock({0, 2})) == clock({1, 2}));
  CHECK_THROWS_AS((void)vc_leq(clock({0}), clock({0, 0})), ContractViolation);
  CHECK_THROWS_AS((void)vc_max(clock({0}), clock({0, 0})), ContractViolation);
  CHECK_THROWS_AS((void)clock({0, 0})[ClientId{2}], ContractViolation);
}

TEST_CASE("vector clock algebra over 10000 random cases") {
  CHECK(testing::vc_property_suite(1, 10'000) == 0);
}

TEST_CASE("dependency restriction examples") {
  const DepSet<DepEntry> none;
  CHECK(restrict_key(none, Key{0}).empty());
  CHECK(restrict_client(none, ClientId{1}).empty());
  const DepSet<DepEntry> d{{ClientId{1}, Timestamp{1}, Key{0}}, {ClientId{1}, Timestamp{2}, Key{1}}};
  CHECK(restrict_key(d, Key{0}) == DepSet<DepEntry>{{ClientId{1}, Timestamp{1}, Key{0}}});
  CHECK(restrict_client(d, ClientId{2}).empty());
}

TEST_CASE("dependency set algebra over 10000 random cases") {
  CHECK(testing::depset_property_suite(2, 10'000) == 0);
}

TEST_CASE("store examples on every backend") {
  for (StoreKind kind : all_stores()) {
    CAPTURE(store_name(kind));
    const KeyStore<Value> fresh(kind, 3, Value{9});
    for (std::uint32_t k = 0; k < 3; ++k) CHECK(store_lookup(fresh, Key{k}) == Value{9});
    const auto one = store_update(fresh, Key{0}, Value{1});
    const auto two = store_update(one, Key{0}, Value{2});
    CHECK(store_lookup(two, Key{0}) == Value{2});
    CHECK(store_lookup(one, Key{0}) == Value{1});
    CHECK(store_lookup(fresh, Key{0}) == Value{9});
    CHECK(to_bytes(two) == to_bytes(store_update(fresh, Key{0}, Value{2})));
    CHECK_THROWS_AS((void)store_lookup(fresh, Key{3}), ContractViolation);
  }
  KeyStore<Value> chain(StoreKind::kChain, 2, Value{0});
  KeyStore<Value> assoc(StoreKind::kAssoc, 2, Value{0});
  for (int i = 0; i < 10; ++i) {
    chain.set(Key{0}, Value{1});
    assoc.set(Key{0}, Value{1});
  }
  CHECK(chain.depth() == 10);
  CHECK(assoc.depth() == 1);
}

TEST_CASE("long chains are destroyed without recursion") {
  KeyStore<Value> chain(StoreKind::kChain, 1, Value{0});
  for (int i = 0; i < 2'000'000; ++i) chain.set(Key{0}, Value{static_cast<std::uint32_t>(i % 3)});
  CHECK(chain.depth() == 2'000'000);
}

TEST_CASE("store backends agree on 100 random scripts of 1000 operations") {
  CHECK(testing::backend_differential(3, 100, 1000) == 0);
}

TEST_CASE("registry contents and errors") {
  CHECK(all_protocols().size() == 12);
  CHECK(all_stores().size() == 3);
  for (ProtocolName n : all_protocols()) CHECK(parse_protocol(protocol_name(n)) == n);
  CHECK_THROWS_AS((void)parse_protocol("ryw"), InvalidArgument);
  CHECK_THROWS_AS((void)parse_store("list"), InvalidArgument);
  CHECK(parse_store("chain") == StoreKind::kChain);

  CHECK_THROWS_AS((void)make_protocol(ProtocolName::kLccSpec, StoreKind::kTree, kDesk), InvalidArgument);
  CHECK_THROWS_AS((void)make_protocol(ProtocolName::kCcSpec, StoreKind::kTree, kDesk, default_labeling(kDesk, 1)),
                  InvalidArgument);
  CHECK_THROWS_AS((void)make_protocol(ProtocolName::kRelaxed, StoreKind::kTree, Domain{2, 2, 4, 3}), InvalidArgument);
  CHECK_THROWS_AS((void)make_protocol(ProtocolName::kRelaxed, StoreKind::kTree, Domain{0, 2, 2, 3}), InvalidArgument);
  const auto lcc = make_protocol(ProtocolName::kLccSpec, StoreKind::kChain, kDesk, default_labeling(kDesk, 2));
  CHECK(lcc.name() == "lcc_spec");
  CHECK(lcc.store() == StoreKind::kChain);

  for (MutantKind m : all_mutants()) {
    const auto def = make_mutant(m, StoreKind::kTree, kDesk);
    CHECK(def.name().rfind(protocol_name(mutant_base(m)), 0) == 0);
    CHECK(def.name().find("_guard_true") != std::string::npos);
  }
}

TEST_CASE("labeling files") {
  const auto l = parse_labeling("labels 2\nvalue 1: 0  # override\nclient 2: 1\n", kDesk);
  CHECK(l.label_count == 2);
  CHECK(l.label(Value{0}) == TopicLabel{0});
  CHECK(l.label(Value{1}) == TopicLabel{0});
  CHECK(l.label(Value{2}) == TopicLabel{0});
  CHECK(l.labels_of(ClientId{1}) == SortedSet<TopicLabel>{TopicLabel{0}, TopicLabel{1}});
  CHECK(l.labels_of(ClientId{2}) == SortedSet<TopicLabel>{TopicLabel{1}});
  CHECK_THROWS_AS((void)parse_labeling("labels 2\nclient 1: 5\n", kDesk), InvalidArgument);
  CHECK_THROWS_AS((void)parse_labeling("client 1: 0\n", kDesk), InvalidArgument);
  CHECK_THROWS_AS((void)parse_labeling("labels 2\nclient 9: 0\n", kDesk), InvalidArgument);
}

TEST_CASE("ryw impl steps in lock-step with ryw spec") {
  // Every impl step has a spec step with the same label, from states reached
  // by the same label sequence. Put values are distinct per (key, value) so
  // that a label names one message.
  const RywImpl impl(kDesk, StoreKind::kTree);
  const RywSpec spec(kDesk, StoreKind::kTree);
  const Application app = ApplicationBuilder()
                              .put(1, 0, 1)
                              .put(1, 0, 2)
                              .get(1, 0, 0)
                              .put(2, 1, 2)
                              .get(2, 0, 0)
                              .get(2, 1, 1)
                              .build();
  const auto reps = default_replicas(kDesk);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto wi = initial_world(impl, app, Value{0}, reps);
    auto ws = initial_world(spec, app, Value{0}, reps);
    Rng rng(seed);
    for (int i = 0; i < 40; ++i) {
      const auto ts = enabled_transitions(wi, impl);
      if (ts.empty()) break;
      const std::string want = render_label(apply_transition(wi, ts[rng.below(ts.size())], impl));
      bool matched = false;
      for (const Transition& t : enabled_transitions(ws, spec)) {
        auto [next, label] = step(ws, t, spec);
        if (render_label(label) == want) {
          ws = std::move(next);
          matched = true;
          break;
        }
      }
      REQUIRE_MESSAGE(matched, "spec cannot follow `" << want << "` at seed " << seed);
    }
  }
}

TEST_CASE("cc impl 1 received clocks only grow") {
  const CcImplVc p(kDesk, StoreKind::kAssoc);
  const Application app = ApplicationBuilder()
                              .put(1, 0, 1)
                              .get(1, 0, 1)
                              .put(1, 1, 2)
                              .get(2, 0, 1)
                              .put(2, 0, 2)
                              .get(2, 1, 0)
                              .build();
  const auto reps = default_replicas(kDesk);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto w = initial_world(p, app, Value{0}, reps);
    Rng rng(seed);
    for (int i = 0; i < 60; ++i) {
      const auto ts = enabled_transitions(w, p);
      if (ts.empty()) break;
      std::vector<VectorClock> before;
      for (const auto& [r, rt] : w.replicas) before.push_back(rt.state.received);
      (void)apply_transition(w, ts[rng.below(ts.size())], p);
      for (std::size_t j = 0; j < w.replicas.size(); ++j) {
        CHECK(vc_leq(before[j], w.replicas[j].second.state.received));
      }
    }
  }
}

TEST_CASE("lcc with a single label behaves like cc") {
  const auto cc = make_protocol(ProtocolName::kCcSpec, StoreKind::kTree, kDesk);
  const auto lcc = make_protocol(ProtocolName::kLccSpec, StoreKind::kTree, kDesk, default_labeling(kDesk, 1));
  const Application apps[] = {
      ApplicationBuilder().put(1, 0, 1).put(1, 0, 2).get(1, 0, 0).build(),
      ApplicationBuilder().put(1, 0, 1).put(1, 1, 2).get(2, 0, 1).get(2, 1, 0).build(),
      ApplicationBuilder().put(1, 0, 1).get(1, 0, 1).put(2, 1, 2).get(2, 1, 0).build(),
  };
  for (const auto& app : apps) CHECK(histories(cc, app, 16) == histories(lcc, app, 16));
}

TEST_CASE("every store backend yields the same histories") {
  const Application app = ApplicationBuilder().put(1, 0, 1).get(1, 0, 1).put(2, 1, 2).get(2, 1, 0).build();
  for (ProtocolName n : all_protocols()) {
    CAPTURE(protocol_name(n));
    const auto chain = histories(make_protocol_or_default(n, StoreKind::kChain, kDesk), app, 12);
    CHECK(chain == histories(make_protocol_or_default(n, StoreKind::kAssoc, kDesk), app, 12));
    CHECK(chain == histories(make_protocol_or_default(n, StoreKind::kTree, kDesk), app, 12));
  }
}

TEST_CASE("mutants differ from their base only in the forced guard") {
  const RywImpl base(kDesk, StoreKind::kTree);
  const GetGuardForcedTrue<RywImpl> m(base);
  auto s = base.replica_init(ReplicaId{1}, Value{0});
  s.set(Key{0}, RywImpl::Entry{Value{2}, ClientId{1}, Timestamp{3}});
  CHECK_FALSE(base.get_guard(Key{0}, Timestamp{1}, ClientId{1}, ReplicaId{1}, s));
  CHECK(m.get_guard(Key{0}, Timestamp{1}, ClientId{1}, ReplicaId{1}, s));
  CHECK(m.put_req(Key{0}, Value{1}, ClientId{1}, m.client_init(ClientId{1})).payload ==
        base.put_req(Key{0}, Value{1}, ClientId{1}, base.client_init(ClientId{1})).payload);
}

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


#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/label.hpp"
#include "sessionkv/kernel/message.hpp"
#include "sessionkv/kernel/program.hpp"

namespace {

using namespace sessionkv;

EventLabel random_label(std::mt19937_64& g) {
  const auto n = [&](std::uint32_t m) { return static_cast<std::uint32_t>(g() % m); };
  const ClientId c{1 + n(3)};
  const OpId op{c, 1 + n(5)};
  switch (n(5)) {
    case 0:
      return ClientGetReq{c, op, Key{n(3)}};
    case 1:
      return ReplicaGetServe{ReplicaId{1 + n(3)}, op, Key{n(3)}, Value{n(9)}};
    case 2:
      return ClientGetRes{c, op, Key{n(3)}, Value{n(9)}};
    case 3:
      return ClientPutReq{c, Key{n(3)}, Value{n(9)}};
    default:
      return ReplicaPutApply{ReplicaId{1 + n(3)}, Key{n(3)}, Value{n(9)}};
  }
}

History random_history(std::mt19937_64& g, std::size_t len) {
  History h;
  for (std::size_t i = 0; i < len; ++i) h.push_back(random_label(g));
  return h;
}

// Second, independently written filter: keep by variant index.
History oracle_filter(const History& h) {
  History out;
  for (const auto& l : h) {
    const auto idx = l.index();
    if (idx == 2 || idx == 3) out.push_back(l);
  }
  return out;
}

TEST_CASE("ext_history of empty history is empty") { CHECK(ext_history({}).empty()); }

TEST_CASE("ext_history drops replica-side labels") {
  const History h{ClientPutReq{ClientId{1}, Key{0}, Value{7}}, ReplicaPutApply{ReplicaId{1}, Key{0}, Value{7}}};
  const ExternalHistory e = ext_history(h);
  REQUIRE(e.size() == 1);
  CHECK(std::get<ClientPutReq>(e[0]) == ClientPutReq{ClientId{1}, Key{0}, Value{7}});
}

TEST_CASE("ext_history agrees with an index-based filter") {
  std::mt19937_64 g(7);
  for (int i = 0; i < 500; ++i) {
    const History h = random_history(g, g() % 25);
    CHECK(ext_history(h) == oracle_filter(h));
  }
}

TEST_CASE("ext_history laws") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 1000; ++i) {
    const History a = random_history(g, g() % 12);
    const History b = random_history(g, g() % 12);
    const auto ea = ext_history(a);
    CHECK(ext_history(ea) == ea);

    History ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto expect = ea;
    const auto eb = ext_history(b);
    expect.insert(expect.end(), eb.begin(), eb.end());
    CHECK(ext_history(ab) == expect);

    // Subsequence check with a greedy two-pointer walk.
    std::size_t j = 0;
    for (const auto& l : a) {
      if (j < ea.size() && l == ea[j]) ++j;
    }
    CHECK(j == ea.size());
    for (const auto& l : ea) CHECK(is_external(l));
  }
}

TEST_CASE("label rendering is canonical and parses back") {
  const OpId op{ClientId{1}, 3};
  CHECK(render_label(ClientPutReq{ClientId{1}, Key{0}, Value{7}}) == "c1 > put(k0,7)");
  CHECK(render_label(ClientGetRes{ClientId{1}, op, Key{0}, Value{7}}) == "c1 > get#3(k0) : 7");
  CHECK(render_label(ClientGetReq{ClientId{1}, op, Key{0}}) == "c1 > get#3(k0)");
  CHECK(render_label(ReplicaGetServe{ReplicaId{2}, op, Key{0}, Value{7}}) == "r2 > get#3(k0) : 7 [c1]");
  CHECK(render_label(ReplicaPutApply{ReplicaId{2}, Key{1}, Value{0}}) == "r2 > put(k1,0)");

  std::mt19937_64 g(3);
  for (int i = 0; i < 200; ++i) {
    const History h = random_history(g, g() % 20);
    CHECK(parse_history(render_history(h)) == h);
  }
  CHECK_THROWS_AS((void)parse_label("c1 > put(k0,7"), InvalidArgument);
  CHECK_THROWS_AS((void)parse_label("x1 > put(k0,7)"), InvalidArgument);
  CHECK_THROWS_AS((void)parse_label("c1 > put(k0,7) junk"), InvalidArgument);
}

TEST_CASE("shortlex order puts shorter histories first") {
  const ExternalHistory a{ClientPutReq{ClientId{2}, Key{1}, Value{2}}};
  const ExternalHistory b{ClientPutReq{ClientId{1}, Key{0}, Value{0}}, ClientPutReq{ClientId{1}, Key{0}, Value{0}}};
  CHECK(shortlex_less(a, b));
  CHECK_FALSE(shortlex_less(b, a));
  CHECK_FALSE(shortlex_less(a, a));
}

TEST_CASE("application builder assigns op ids from 1 per client") {
  const Application app = ApplicationBuilder{}.put(1, 0, 1).get(2, 0, 0).put(1, 1, 2).build();
  const auto& p1 = app.programs.at(ClientId{1});
  REQUIRE(p1.size() == 2);
  CHECK(std::get<Put>(p1[0]).op == OpId{ClientId{1}, 1});
  CHECK(std::get<Put>(p1[1]).op == OpId{ClientId{1}, 2});
  CHECK(std::get<Get>(app.programs.at(ClientId{2})[0]).op == OpId{ClientId{2}, 1});
}

TEST_CASE("application validation") {
  Application a;
  a.programs[ClientId{0}] = {};
  CHECK_THROWS_AS(a.validate(), InvalidArgument);

  Application dup;
  dup.programs[ClientId{1}] = {Put{OpId{ClientId{1}, 1}, Key{0}, Value{1}}, Put{OpId{ClientId{1}, 1}, Key{0}, Value{2}}};
  CHECK_THROWS_AS(dup.validate(), InvalidArgument);

  Application owner;
  owner.programs[ClientId{1}] = {Put{OpId{ClientId{2}, 1}, Key{0}, Value{1}}};
  CHECK_THROWS_AS(owner.validate(), InvalidArgument);

  Application blocked;
  blocked.programs[ClientId{1}] = {BlockedGet{OpId{ClientId{1}, 1}, Variable{0}, Key{0}}};
  CHECK_THROWS_AS(blocked.validate(), InvalidArgument);

  Application unbound;
  unbound.programs[ClientId{1}] = {Put{OpId{ClientId{1}, 1}, Key{0}, Variable{4}}};
  CHECK_THROWS_AS(unbound.validate(), InvalidArgument);

  const Application ok = ApplicationBuilder{}.put(1, 1, 2).build();
  CHECK_NOTHROW(ok.validate(Domain{}));
  CHECK_THROWS_AS(ApplicationBuilder{}.put(1, 2, 0).build().validate(Domain{}), InvalidArgument);
  CHECK_THROWS_AS(ApplicationBuilder{}.put(1, 0, 3).build().validate(Domain{}), InvalidArgument);
  CHECK_THROWS_AS(ApplicationBuilder{}.put(3, 0, 0).build().validate(Domain{}), InvalidArgument);
}

TEST_CASE("substitution replaces the bound variable up to a rebinding") {
  Program p{Put{OpId{ClientId{1}, 2}, Key{0}, Variable{0}}, Get{OpId{ClientId{1}, 3}, Variable{0}, Key{1}},
            Put{OpId{ClientId{1}, 4}, Key{1}, Variable{0}}};
  substitute(p, Variable{0}, Value{7});
  CHECK(std::get<Put>(p[0]).value == Operand{Value{7}});
  CHECK(std::get<Put>(p[2]).value == Operand{Variable{0}});
}

TEST_CASE("program text parses and renders") {
  const Application app = parse_application(
      "# demo\n"
      "client 1:\n"
      "  put 0 1\n"
      "  get x 0   # read back\n"
      "client 2:\n"
      "  get y 1\n"
      "  put 0 y\n");
  REQUIRE(app.programs.size() == 2);
  CHECK(app.programs.at(ClientId{1}).size() == 2);
  const auto& p2 = app.programs.at(ClientId{2});
  CHECK(std::get<Put>(p2[1]).value == Operand{std::get<Get>(p2[0]).var});
  CHECK(parse_application(render_application(app)) == app);

  CHECK_THROWS_AS(parse_application("put 0 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_application("client 1:\n put 0 z\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_application("client 0:\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_application("client 1:\n del 0\n"), InvalidArgument);
  try {
    (void)parse_application("client 1:\n  put 0 1\n  put a b\n");
    FAIL("expected parse error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

struct Sample {
  std::set<std::tuple<ClientId, Timestamp, Key>> deps;
  std::vector<Value> list;
  std::map<Key, Timestamp> clock;
  std::optional<OpId> op;

  SESSIONKV_FIELDS(deps, list, clock, op)
  auto operator<=>(const Sample&) const = default;
};

TEST_CASE("canonical encoding round-trips and is order-insensitive on sets") {
  Sample s;
  s.deps = {{ClientId{2}, Timestamp{1}, Key{0}}, {ClientId{1}, Timestamp{4}, Key{1}}};
  s.list = {Value{3}, Value{1}};
  s.clock = {{Key{1}, Timestamp{2}}};
  s.op = OpId{ClientId{1}, 9};
  const Bytes b = to_bytes(s);
  CHECK(from_bytes<Sample>(b) == s);

  Sample t;
  t.deps.insert({ClientId{1}, Timestamp{4}, Key{1}});
  t.deps.insert({ClientId{2}, Timestamp{1}, Key{0}});
  t.list = s.list;
  t.clock = s.clock;
  t.op = s.op;
  CHECK(to_bytes(t) == b);

  CHECK_THROWS_AS(from_bytes<Sample>(b.substr(0, b.size() - 1)), DecodeError);
  CHECK_THROWS_AS(from_bytes<Sample>(b + "x"), DecodeError);
}

TEST_CASE("wire messages round-trip") {
  const WireMessage a = GetRequest<Bytes>{ClientId{1}, ReplicaId{2}, OpId{ClientId{1}, 3}, Key{1}, "pay"};
  const WireMessage b = GetResponse<Bytes>{ReplicaId{2}, ClientId{1}, OpId{ClientId{1}, 3}, Key{1}, Value{5}, ""};
  const WireMessage c = PutRequest<Bytes>{ClientId{1}, ReplicaId{2}, Key{0}, Value{2}, std::string("\0\1", 2)};
  for (const auto& m : {a, b, c}) CHECK(decode_wire(encode_wire(m)) == m);
  CHECK_THROWS_AS(decode_wire("\x07"), DecodeError);
}

TEST_CASE("contract macro throws ContractViolation") {
  CHECK_THROWS_AS(SESSIONKV_EXPECTS(1 == 2, "arithmetic"), ContractViolation);
}

}  // namespace

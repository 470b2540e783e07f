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


#include "sessionkv/kernel/label.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/overloaded.hpp"

namespace sessionkv {
namespace {

std::string op_suffix(const OpId& op) { return "#" + std::to_string(op.sequence); }

/// A minimal cursor over one rendered label.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s), all_(s) {}

  void lit(std::string_view t) {
    if (s_.substr(0, t.size()) != t) fail("expected `" + std::string(t) + "`");
    s_.remove_prefix(t.size());
  }
  bool try_lit(std::string_view t) {
    if (s_.substr(0, t.size()) != t) return false;
    s_.remove_prefix(t.size());
    return true;
  }
  std::uint32_t num() {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s_.data(), s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    s_.remove_prefix(static_cast<std::size_t>(p - s_.data()));
    return v;
  }
  [[nodiscard]] bool done() const { return s_.empty(); }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("cannot parse label `" + std::string(all_) + "`: " + why);
  }

 private:
  std::string_view s_;
  std::string_view all_;
};

}  // namespace

bool is_external(const EventLabel& l) {
  return std::holds_alternative<ClientGetRes>(l) || std::holds_alternative<ClientPutReq>(l);
}

ExternalHistory ext_history(const History& h) {
  ExternalHistory out;
  std::copy_if(h.begin(), h.end(), std::back_inserter(out), is_external);
  return out;
}

bool shortlex_less(const ExternalHistory& a, const ExternalHistory& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string render_label(const EventLabel& l) {
  return std::visit(
      Overloaded{
          [](const ClientGetReq& x) {
            return to_string(x.client) + " > get" + op_suffix(x.op) + "(" + to_string(x.key) + ")";
          },
          [](const ReplicaGetServe& x) {
            return to_string(x.replica) + " > get" + op_suffix(x.op) + "(" + to_string(x.key) + ") : " +
                   to_string(x.value) + " [" + to_string(x.op.client) + "]";
          },
          [](const ClientGetRes& x) {
            return to_string(x.client) + " > get" + op_suffix(x.op) + "(" + to_string(x.key) + ") : " +
                   to_string(x.value);
          },
          [](const ClientPutReq& x) {
            return to_string(x.client) + " > put(" + to_string(x.key) + "," + to_string(x.value) + ")";
          },
          [](const ReplicaPutApply& x) {
            return to_string(x.replica) + " > put(" + to_string(x.key) + "," + to_string(x.value) + ")";
          },
      },
      l);
}

std::string render_history(const History& h) {
  std::string out;
  for (const EventLabel& l : h) {
    out += render_label(l);
    out += '\n';
  }
  return out;
}

EventLabel parse_label(std::string_view line) {
  Cursor in(line);
  bool replica = false;
  if (in.try_lit("r")) {
    replica = true;
  } else {
    in.lit("c");
  }
  const std::uint32_t subject = in.num();
  in.lit(" > ");
  EventLabel out;
  if (in.try_lit("put(k")) {
    const Key k{in.num()};
    in.lit(",");
    const Value v{in.num()};
    in.lit(")");
    if (replica) {
      out = ReplicaPutApply{ReplicaId{subject}, k, v};
    } else {
      out = ClientPutReq{ClientId{subject}, k, v};
    }
  } else {
    in.lit("get#");
    const std::uint32_t seq = in.num();
    in.lit("(k");
    const Key k{in.num()};
    in.lit(")");
    if (replica) {
      in.lit(" : ");
      const Value v{in.num()};
      in.lit(" [c");
      const ClientId c{in.num()};
      in.lit("]");
      out = ReplicaGetServe{ReplicaId{subject}, OpId{c, seq}, k, v};
    } else if (in.try_lit(" : ")) {
      const Value v{in.num()};
      out = ClientGetRes{ClientId{subject}, OpId{ClientId{subject}, seq}, k, v};
    } else {
      out = ClientGetReq{ClientId{subject}, OpId{ClientId{subject}, seq}, k};
    }
  }
  if (!in.done()) in.fail("trailing characters");
  return out;
}

History parse_history(std::string_view text) {
  History h;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    h.push_back(parse_label(line));
  }
  return h;
}

}  // namespace sessionkv

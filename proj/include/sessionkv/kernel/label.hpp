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
#include <string_view>
#include <variant>
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

struct ClientGetReq {
  ClientId client;
  OpId op;
  Key key;

  SESSIONKV_FIELDS(client, op, key)
  auto operator<=>(const ClientGetReq&) const = default;
};

struct ReplicaGetServe {
  ReplicaId replica;
  OpId op;
  Key key;
  Value value;

  SESSIONKV_FIELDS(replica, op, key, value)
  auto operator<=>(const ReplicaGetServe&) const = default;
};

struct ClientGetRes {
  ClientId client;
  OpId op;
  Key key;
  Value value;

  SESSIONKV_FIELDS(client, op, key, value)
  auto operator<=>(const ClientGetRes&) const = default;
};

struct ClientPutReq {
  ClientId client;
  Key key;
  Value value;

  SESSIONKV_FIELDS(client, key, value)
  auto operator<=>(const ClientPutReq&) const = default;
};

struct ReplicaPutApply {
  ReplicaId replica;
  Key key;
  Value value;

  SESSIONKV_FIELDS(replica, key, value)
  auto operator<=>(const ReplicaPutApply&) const = default;
};

using EventLabel = std::variant<ClientGetReq, ReplicaGetServe, ClientGetRes, ClientPutReq, ReplicaPutApply>;

using History = std::vector<EventLabel>;

/// A history holding only ClientGetRes and ClientPutReq labels.
using ExternalHistory = std::vector<EventLabel>;

[[nodiscard]] bool is_external(const EventLabel& l);

[[nodiscard]] ExternalHistory ext_history(const History& h);

/// Shortest first, then lexicographic by label order.
[[nodiscard]] bool shortlex_less(const ExternalHistory& a, const ExternalHistory& b);

/// One label, no newline:
///   c1 > get#3(k0)          ClientGetReq
///   r2 > get#3(k0) : 7 [c1]  ReplicaGetServe
///   c1 > get#3(k0) : 7       ClientGetRes
///   c1 > put(k0,7)           ClientPutReq
///   r2 > put(k0,7)           ReplicaPutApply
[[nodiscard]] std::string render_label(const EventLabel& l);

/// One label per line, each terminated by '\n'.
[[nodiscard]] std::string render_history(const History& h);

/// Inverse of render_label / render_history. Throws InvalidArgument.
[[nodiscard]] EventLabel parse_label(std::string_view line);
[[nodiscard]] History parse_history(std::string_view text);

}  // namespace sessionkv

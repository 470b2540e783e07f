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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

/// A put value is either a literal or a variable bound by an earlier get.
using Operand = std::variant<Value, Variable>;

struct Put {
  OpId op;
  Key key;
  Operand value;

  SESSIONKV_FIELDS(op, key, value)
  auto operator<=>(const Put&) const = default;
};

struct Get {
  OpId op;
  Variable var;
  Key key;

  SESSIONKV_FIELDS(op, var, key)
  auto operator<=>(const Get&) const = default;
};

/// Runtime-only: a get whose request has been broadcast and whose response
/// has not yet been consumed.
struct BlockedGet {
  OpId op;
  Variable var;
  Key key;

  SESSIONKV_FIELDS(op, var, key)
  auto operator<=>(const BlockedGet&) const = default;
};

using Statement = std::variant<Put, Get, BlockedGet>;

/// Sequential composition of statements. The empty program is `skip`.
using Program = std::vector<Statement>;

/// Replaces every occurrence of `var` in put operands of `p` by `v`.
void substitute(Program& p, Variable var, Value v);

struct Application {
  std::map<ClientId, Program> programs;

  auto operator<=>(const Application&) const = default;

  /// Rejects c0, duplicate or mis-owned op ids, runtime-only statements,
  /// and puts reading a variable no earlier get of the same client binds.
  void validate() const;

  /// Additionally checks keys, literal values and client ids against `d`.
  void validate(const Domain& d) const;
};

/// Builds applications with op ids assigned per client from 1.
class ApplicationBuilder {
 public:
  ApplicationBuilder& put(std::uint32_t client, std::uint32_t key, std::uint32_t value);
  ApplicationBuilder& put_var(std::uint32_t client, std::uint32_t key, std::uint32_t var);
  ApplicationBuilder& get(std::uint32_t client, std::uint32_t var, std::uint32_t key);
  /// Registers a client with an empty program.
  ApplicationBuilder& client(std::uint32_t client);

  [[nodiscard]] Application build() const;

 private:
  OpId next(std::uint32_t client);

  Application app_;
  std::map<std::uint32_t, std::uint32_t> seq_;
};

/// Parses the program-file format:
///
///     client 1:
///       put 0 1        # put key 0 := 1
///       get x 0        # x := get key 0
///       put 1 x        # put key 1 := x
///
/// Blank lines and `#` comments are ignored. Throws InvalidArgument with the
/// offending line number.
Application parse_application(std::string_view text);

/// Renders an application in the format accepted by parse_application.
std::string render_application(const Application& app);

}  // namespace sessionkv

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


#include "sessionkv/kernel/program.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/overloaded.hpp"

namespace sessionkv {
namespace {

OpId op_of(const Statement& s) {
  return std::visit([](const auto& x) { return x.op; }, s);
}

void check_program(ClientId c, const Program& p, const Domain* d) {
  std::set<std::uint32_t> seqs;
  std::set<Variable> bound;
  for (const Statement& s : p) {
    const OpId op = op_of(s);
    if (op.client != c) {
      throw InvalidArgument("statement in program of " + to_string(c) + " carries op id of " +
                            to_string(op.client));
    }
    if (op.sequence == 0) throw InvalidArgument("op ids start at 1 (client " + to_string(c) + ")");
    if (!seqs.insert(op.sequence).second) {
      throw InvalidArgument("duplicate op id #" + std::to_string(op.sequence) + " in program of " + to_string(c));
    }
    std::visit(Overloaded{
                   [&](const Put& x) {
                     if (d && x.key.value >= d->keys) throw InvalidArgument("key out of domain: " + to_string(x.key));
                     if (const auto* v = std::get_if<Value>(&x.value)) {
                       if (d && v->value >= d->values) throw InvalidArgument("value out of domain: " + to_string(*v));
                     } else if (!bound.count(std::get<Variable>(x.value))) {
                       throw InvalidArgument("put reads unbound variable x" +
                                             std::to_string(std::get<Variable>(x.value).value) + " in program of " +
                                             to_string(c));
                     }
                   },
                   [&](const Get& x) {
                     if (d && x.key.value >= d->keys) throw InvalidArgument("key out of domain: " + to_string(x.key));
                     bound.insert(x.var);
                   },
                   [&](const BlockedGet&) {
                     throw InvalidArgument("blocked get in source program of " + to_string(c));
                   },
               },
               s);
  }
}

}  // namespace

void substitute(Program& p, Variable var, Value v) {
  for (Statement& s : p) {
    if (auto* put = std::get_if<Put>(&s)) {
      if (const auto* x = std::get_if<Variable>(&put->value); x && *x == var) put->value = v;
    } else if (const auto* g = std::get_if<Get>(&s); g && g->var == var) {
      // A later get rebinds the variable; the rest of the program sees the
      // new binding instead.
      return;
    }
  }
}

void Application::validate() const {
  for (const auto& [c, prog] : programs) {
    if (c == kInitialClient) throw InvalidArgument("application must not contain the initial client c0");
    check_program(c, prog, nullptr);
  }
}

void Application::validate(const Domain& d) const {
  for (const auto& [c, prog] : programs) {
    if (c == kInitialClient) throw InvalidArgument("application must not contain the initial client c0");
    if (c.value > d.clients) {
      throw InvalidArgument("client " + to_string(c) + " outside domain of " + std::to_string(d.clients) +
                            " clients");
    }
    check_program(c, prog, &d);
  }
}

OpId ApplicationBuilder::next(std::uint32_t client) {
  app_.programs[ClientId{client}];
  return OpId{ClientId{client}, ++seq_[client]};
}

ApplicationBuilder& ApplicationBuilder::put(std::uint32_t client, std::uint32_t key, std::uint32_t value) {
  const OpId op = next(client);
  app_.programs[ClientId{client}].push_back(Put{op, Key{key}, Value{value}});
  return *this;
}

ApplicationBuilder& ApplicationBuilder::put_var(std::uint32_t client, std::uint32_t key, std::uint32_t var) {
  const OpId op = next(client);
  app_.programs[ClientId{client}].push_back(Put{op, Key{key}, Variable{var}});
  return *this;
}

ApplicationBuilder& ApplicationBuilder::get(std::uint32_t client, std::uint32_t var, std::uint32_t key) {
  const OpId op = next(client);
  app_.programs[ClientId{client}].push_back(Get{op, Variable{var}, Key{key}});
  return *this;
}

ApplicationBuilder& ApplicationBuilder::client(std::uint32_t client) {
  app_.programs[ClientId{client}];
  return *this;
}

Application ApplicationBuilder::build() const {
  app_.validate();
  return app_;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t parse_u32(std::string_view tok, std::size_t line) {
  std::uint32_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || p != end) {
    throw InvalidArgument("line " + std::to_string(line) + ": expected a non-negative integer, got `" +
                          std::string(tok) + "`");
  }
  return v;
}

bool is_number(std::string_view tok) {
  return !tok.empty() && tok.find_first_not_of("0123456789") == std::string_view::npos;
}

bool is_identifier(std::string_view tok) {
  if (tok.empty() || !(std::isalpha(static_cast<unsigned char>(tok.front())) || tok.front() == '_')) return false;
  for (char ch : tok) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  }
  return true;
}

}  // namespace

Application parse_application(std::string_view text) {
  ApplicationBuilder b;
  std::optional<std::uint32_t> current;
  // Variable names are numbered in order of first appearance.
  std::map<std::string, std::uint32_t, std::less<>> vars;
  auto var_id = [&](std::string_view name, std::size_t line, bool binding) -> std::uint32_t {
    if (!is_identifier(name)) {
      throw InvalidArgument("line " + std::to_string(line) + ": bad variable name `" + std::string(name) + "`");
    }
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    if (!binding) {
      throw InvalidArgument("line " + std::to_string(line) + ": variable `" + std::string(name) +
                            "` used before any get binds it");
    }
    const auto id = static_cast<std::uint32_t>(vars.size());
    vars.emplace(std::string(name), id);
    return id;
  };
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "client") {
      std::string_view id = toks.size() == 2 ? toks[1] : std::string_view{};
      if (id.empty() || id.back() != ':') {
        throw InvalidArgument("line " + std::to_string(line_no) + ": expected `client <id>:`");
      }
      id.remove_suffix(1);
      if (!id.empty() && id.front() == 'c') id.remove_prefix(1);
      current = parse_u32(id, line_no);
      if (*current == 0) throw InvalidArgument("line " + std::to_string(line_no) + ": client 0 is reserved");
      b.client(*current);
      continue;
    }
    if (!current) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": statement before any `client <id>:` header");
    }
    if (toks[0] == "put" && toks.size() == 3) {
      const std::uint32_t key = parse_u32(toks[1], line_no);
      if (is_number(toks[2])) {
        b.put(*current, key, parse_u32(toks[2], line_no));
      } else {
        b.put_var(*current, key, var_id(toks[2], line_no, false));
      }
    } else if (toks[0] == "get" && toks.size() == 3) {
      b.get(*current, var_id(toks[1], line_no, true), parse_u32(toks[2], line_no));
    } else {
      throw InvalidArgument("line " + std::to_string(line_no) + ": unrecognized statement `" +
                            std::string(toks[0]) + "`");
    }
  }
  return b.build();
}

std::string render_application(const Application& app) {
  std::ostringstream out;
  for (const auto& [c, prog] : app.programs) {
    out << "client " << c.value << ":\n";
    for (const Statement& s : prog) {
      std::visit(Overloaded{
                     [&](const Put& x) {
                       out << "  put " << x.key.value << ' ';
                       if (const auto* v = std::get_if<Value>(&x.value)) {
                         out << v->value;
                       } else {
                         out << 'x' << std::get<Variable>(x.value).value;
                       }
                       out << '\n';
                     },
                     [&](const Get& x) { out << "  get x" << x.var.value << ' ' << x.key.value << '\n'; },
                     [&](const BlockedGet&) {
                       throw InvalidArgument("cannot render a runtime-only blocked get");
                     },
                 },
                 s);
    }
  }
  return out.str();
}

}  // namespace sessionkv

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

// Canonical byte encoding.
//
// Every protocol state and payload has exactly one encoding: integers are
// fixed-width little endian, containers are length-prefixed, and ordered
// containers are written in their iteration order (which is sorted). Two
// values are equal iff their encodings are equal. The same encoding is used
// for state deduplication during exploration and as the wire format of the
// benchmark runtime.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

using Bytes = std::string;

/// Declares `tie()` accessors so that a struct is encodable.
#define SESSIONKV_FIELDS(...)                          \
  auto tie() const { return std::tie(__VA_ARGS__); } \
  auto tie() { return std::tie(__VA_ARGS__); }

class Encoder {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
  void bytes(std::string_view b) {
    u32(static_cast<std::uint32_t>(b.size()));
    out_.append(b);
  }

  [[nodiscard]] const Bytes& buffer() const& { return out_; }
  [[nodiscard]] Bytes take() && { return std::move(out_); }
  void clear() { out_.clear(); }

 private:
  Bytes out_;
};

/// Thrown by Decoder on truncated or malformed input.
class DecodeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class Decoder {
 public:
  explicit Decoder(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<std::uint8_t>(in_[pos_++])} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<std::uint8_t>(in_[pos_++])} << (8 * i);
    return v;
  }
  std::string_view bytes() {
    const std::uint32_t n = u32();
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  [[nodiscard]] bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw DecodeError("truncated canonical encoding");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

template <class T>
concept Tied = requires(const T& c, T& m) {
  c.tie();
  m.tie();
};

// ---- encode ---------------------------------------------------------------

template <class Tag>
void encode(Encoder& e, StrongId<Tag> id) {
  e.u32(id.value);
}
inline void encode(Encoder& e, Timestamp t) { e.u32(t.value); }
inline void encode(Encoder& e, const OpId& op) {
  e.u32(op.client.value);
  e.u32(op.sequence);
}
inline void encode(Encoder&, Unit) {}
inline void encode(Encoder& e, bool b) { e.u8(b ? 1 : 0); }
inline void encode(Encoder& e, std::uint32_t v) { e.u32(v); }
inline void encode(Encoder& e, const std::string& s) { e.bytes(s); }

template <Tied T>
void encode(Encoder& e, const T& x);
template <class A, class B>
void encode(Encoder& e, const std::pair<A, B>& p);
template <class... Ts>
void encode(Encoder& e, const std::tuple<Ts...>& t);
template <class T>
void encode(Encoder& e, const std::vector<T>& v);
template <class T>
void encode(Encoder& e, const std::set<T>& s);
template <class K, class V>
void encode(Encoder& e, const std::map<K, V>& m);
template <class T>
void encode(Encoder& e, const std::optional<T>& o);
template <class... Ts>
void encode(Encoder& e, const std::variant<Ts...>& v);

template <class A, class B>
void encode(Encoder& e, const std::pair<A, B>& p) {
  encode(e, p.first);
  encode(e, p.second);
}
template <class... Ts>
void encode(Encoder& e, const std::tuple<Ts...>& t) {
  std::apply([&](const auto&... xs) { (encode(e, xs), ...); }, t);
}
template <Tied T>
void encode(Encoder& e, const T& x) {
  encode(e, x.tie());
}
template <class T>
void encode(Encoder& e, const std::vector<T>& v) {
  e.u32(static_cast<std::uint32_t>(v.size()));
  for (const auto& x : v) encode(e, x);
}
template <class T>
void encode(Encoder& e, const std::set<T>& s) {
  e.u32(static_cast<std::uint32_t>(s.size()));
  for (const auto& x : s) encode(e, x);
}
template <class K, class V>
void encode(Encoder& e, const std::map<K, V>& m) {
  e.u32(static_cast<std::uint32_t>(m.size()));
  for (const auto& [k, v] : m) {
    encode(e, k);
    encode(e, v);
  }
}
template <class T>
void encode(Encoder& e, const std::optional<T>& o) {
  e.u8(o ? 1 : 0);
  if (o) encode(e, *o);
}
template <class... Ts>
void encode(Encoder& e, const std::variant<Ts...>& v) {
  e.u8(static_cast<std::uint8_t>(v.index()));
  std::visit([&](const auto& x) { encode(e, x); }, v);
}

// ---- decode ---------------------------------------------------------------

template <class Tag>
void decode(Decoder& d, StrongId<Tag>& id) {
  id.value = d.u32();
}
inline void decode(Decoder& d, Timestamp& t) { t.value = d.u32(); }
inline void decode(Decoder& d, OpId& op) {
  op.client.value = d.u32();
  op.sequence = d.u32();
}
inline void decode(Decoder&, Unit&) {}
inline void decode(Decoder& d, bool& b) { b = d.u8() != 0; }
inline void decode(Decoder& d, std::uint32_t& v) { v = d.u32(); }
inline void decode(Decoder& d, std::string& s) { s = std::string(d.bytes()); }

template <Tied T>
void decode(Decoder& d, T& x);
template <class A, class B>
void decode(Decoder& d, std::pair<A, B>& p);
template <class... Ts>
void decode(Decoder& d, std::tuple<Ts&...> t);
template <class... Ts>
void decode(Decoder& d, std::tuple<Ts...>& t);
template <class T>
void decode(Decoder& d, std::vector<T>& v);
template <class T>
void decode(Decoder& d, std::set<T>& s);
template <class K, class V>
void decode(Decoder& d, std::map<K, V>& m);
template <class T>
void decode(Decoder& d, std::optional<T>& o);
template <class... Ts>
void decode(Decoder& d, std::variant<Ts...>& v);

template <class A, class B>
void decode(Decoder& d, std::pair<A, B>& p) {
  decode(d, p.first);
  decode(d, p.second);
}
template <class... Ts>
void decode(Decoder& d, std::tuple<Ts&...> t) {
  std::apply([&](auto&... xs) { (decode(d, xs), ...); }, t);
}
template <class... Ts>
void decode(Decoder& d, std::tuple<Ts...>& t) {
  std::apply([&](auto&... xs) { (decode(d, xs), ...); }, t);
}
template <Tied T>
void decode(Decoder& d, T& x) {
  decode(d, x.tie());
}
template <class T>
void decode(Decoder& d, std::vector<T>& v) {
  const std::uint32_t n = d.u32();
  v.clear();
  v.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    T x{};
    decode(d, x);
    v.push_back(std::move(x));
  }
}
template <class T>
void decode(Decoder& d, std::set<T>& s) {
  const std::uint32_t n = d.u32();
  s.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    T x{};
    decode(d, x);
    s.insert(s.end(), std::move(x));
  }
}
template <class K, class V>
void decode(Decoder& d, std::map<K, V>& m) {
  const std::uint32_t n = d.u32();
  m.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    K k{};
    V v{};
    decode(d, k);
    decode(d, v);
    m.emplace_hint(m.end(), std::move(k), std::move(v));
  }
}
template <class T>
void decode(Decoder& d, std::optional<T>& o) {
  if (d.u8() != 0) {
    T x{};
    decode(d, x);
    o = std::move(x);
  } else {
    o.reset();
  }
}

template <class... Ts>
void decode(Decoder& d, std::variant<Ts...>& v) {
  const std::size_t idx = d.u8();
  if (idx >= sizeof...(Ts)) throw DecodeError("variant alternative out of range");
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    ((I == idx ? (void)[&] {
      std::variant_alternative_t<I, std::variant<Ts...>> x{};
      decode(d, x);
      v = std::move(x);
    }()
               : (void)0),
     ...);
  }(std::index_sequence_for<Ts...>{});
}

template <class T>
Bytes to_bytes(const T& x) {
  Encoder e;
  encode(e, x);
  return std::move(e).take();
}

template <class T>
T from_bytes(std::string_view b) {
  Decoder d(b);
  T x{};
  decode(d, x);
  if (!d.done()) throw DecodeError("trailing bytes after canonical encoding");
  return x;
}

}  // namespace sessionkv

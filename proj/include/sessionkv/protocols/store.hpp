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


// Replica key -> entry maps.
//
// Three interchangeable backends share one interface:
//
//   OverrideChain  A persistent stack of (key, entry) layers. Each update
//                  pushes a layer and a lookup walks all of them, so it
//                  costs O(number of updates so far): the cost model of a
//                  map represented as nested closures.
//   AssocList      One slot per written key, updated in place. O(keys).
//   BalancedTree   std::map. O(log keys).
//
// Keys never written read as the initial entry. The canonical encoding walks
// the key domain, so equal maps encode identically whatever the backend.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

enum class StoreKind : std::uint8_t { kChain = 0, kAssoc = 1, kTree = 2 };

[[nodiscard]] const char* store_name(StoreKind k);
/// Throws InvalidArgument naming the token.
[[nodiscard]] StoreKind parse_store(const std::string& name);
[[nodiscard]] const std::vector<StoreKind>& all_stores();

template <class Entry>
class OverrideChain {
 public:
  OverrideChain() = default;
  OverrideChain(const OverrideChain&) = default;
  OverrideChain(OverrideChain&&) noexcept = default;
  OverrideChain& operator=(const OverrideChain&) = default;
  OverrideChain& operator=(OverrideChain&&) noexcept = default;

  ~OverrideChain() {
    // Unlink uniquely owned layers one at a time; the default recursive
    // destruction overflows the stack on long chains.
    std::shared_ptr<Node> cur = std::move(head_);
    while (cur && cur.use_count() == 1) {
      std::shared_ptr<Node> next = std::move(cur->next);
      cur = std::move(next);
    }
  }

  // Every layer is visited, as a strict closure `k' -> let old = f k' in
  // if k' = k then e else old` would; the newest match wins.
  [[nodiscard]] const Entry* find(Key k) const {
    const Entry* hit = nullptr;
    std::size_t walked = 0;
    for (const Node* n = head_.get(); n != nullptr; n = n->next.get()) {
      if (hit == nullptr && n->key == k) hit = &n->entry;
      ++walked;
    }
    // Recording the walk keeps the compiler from stopping at the first hit.
    last_walk_ = walked;
    return hit;
  }

  /// Layers visited by the most recent find.
  [[nodiscard]] std::size_t last_walk() const { return last_walk_; }

  void set(Key k, Entry e) {
    head_ = std::make_shared<Node>(Node{k, std::move(e), std::move(head_)});
    ++depth_;
  }

  [[nodiscard]] std::size_t depth() const { return depth_; }

 private:
  struct Node {
    Key key;
    Entry entry;
    std::shared_ptr<Node> next;
  };

  // Layers are never modified after construction except while unlinking.
  std::shared_ptr<Node> head_;
  std::size_t depth_ = 0;
  mutable std::size_t last_walk_ = 0;
};

template <class Entry>
class AssocList {
 public:
  [[nodiscard]] const Entry* find(Key k) const {
    for (const auto& [key, e] : slots_) {
      if (key == k) return &e;
    }
    return nullptr;
  }

  void set(Key k, Entry e) {
    for (auto& [key, slot] : slots_) {
      if (key == k) {
        slot = std::move(e);
        return;
      }
    }
    slots_.emplace_back(k, std::move(e));
  }

  [[nodiscard]] std::size_t depth() const { return slots_.size(); }

 private:
  std::vector<std::pair<Key, Entry>> slots_;
};

template <class Entry>
class BalancedTree {
 public:
  [[nodiscard]] const Entry* find(Key k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }

  void set(Key k, Entry e) { map_.insert_or_assign(k, std::move(e)); }

  [[nodiscard]] std::size_t depth() const { return map_.size(); }

 private:
  std::map<Key, Entry> map_;
};

/// Total map over keys 0..key_count-1 with a configurable backend.
template <class Entry>
class KeyStore {
 public:
  KeyStore() = default;
  KeyStore(StoreKind kind, std::uint32_t key_count, Entry initial)
      : key_count_(key_count), initial_(std::make_shared<const Entry>(std::move(initial))) {
    switch (kind) {
      case StoreKind::kChain:
        impl_.template emplace<OverrideChain<Entry>>();
        break;
      case StoreKind::kAssoc:
        impl_.template emplace<AssocList<Entry>>();
        break;
      case StoreKind::kTree:
        impl_.template emplace<BalancedTree<Entry>>();
        break;
    }
  }

  [[nodiscard]] StoreKind kind() const { return static_cast<StoreKind>(impl_.index()); }
  [[nodiscard]] std::uint32_t key_count() const { return key_count_; }

  [[nodiscard]] const Entry& lookup(Key k) const {
    SESSIONKV_EXPECTS(k.value < key_count_, "key outside store domain");
    const Entry* e = std::visit([k](const auto& s) { return s.find(k); }, impl_);
    return e != nullptr ? *e : *initial_;
  }

  void set(Key k, Entry e) {
    SESSIONKV_EXPECTS(k.value < key_count_, "key outside store domain");
    std::visit([&](auto& s) { s.set(k, std::move(e)); }, impl_);
  }

  /// Persistent update: `*this` is unchanged.
  [[nodiscard]] KeyStore update(Key k, Entry e) const {
    KeyStore out = *this;
    out.set(k, std::move(e));
    return out;
  }

  /// Layers for the chain, occupied slots otherwise.
  [[nodiscard]] std::size_t depth() const {
    return std::visit([](const auto& s) { return s.depth(); }, impl_);
  }

  friend void encode(Encoder& e, const KeyStore& s) {
    e.u32(s.key_count_);
    for (std::uint32_t k = 0; k < s.key_count_; ++k) encode(e, s.lookup(Key{k}));
  }

 private:
  std::uint32_t key_count_ = 0;
  std::shared_ptr<const Entry> initial_;
  std::variant<OverrideChain<Entry>, AssocList<Entry>, BalancedTree<Entry>> impl_;
};

template <class Entry>
[[nodiscard]] const Entry& store_lookup(const KeyStore<Entry>& s, Key k) {
  return s.lookup(k);
}

template <class Entry>
[[nodiscard]] KeyStore<Entry> store_update(const KeyStore<Entry>& s, Key k, Entry e) {
  return s.update(k, std::move(e));
}

}  // namespace sessionkv

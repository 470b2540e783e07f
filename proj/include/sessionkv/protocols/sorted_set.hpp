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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <utility>
#include <vector>

#include "sessionkv/kernel/encoding.hpp"

namespace sessionkv {

/// Finite set backed by a sorted vector. Copies are a single allocation,
/// which matters when exploration clones protocol states at every step.
template <class T>
class SortedSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  SortedSet() = default;
  SortedSet(std::initializer_list<T> xs) : items_(xs) { normalize(); }
  template <class It>
  SortedSet(It first, It last) : items_(first, last) {
    normalize();
  }

  [[nodiscard]] const_iterator begin() const { return items_.begin(); }
  [[nodiscard]] const_iterator end() const { return items_.end(); }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] const std::vector<T>& items() const { return items_; }

  [[nodiscard]] bool contains(const T& x) const { return std::binary_search(items_.begin(), items_.end(), x); }

  bool insert(T x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it != items_.end() && *it == x) return false;
    items_.insert(it, std::move(x));
    return true;
  }

  template <class Pred>
  [[nodiscard]] SortedSet filter(Pred keep) const {
    SortedSet out;
    std::copy_if(items_.begin(), items_.end(), std::back_inserter(out.items_), keep);
    return out;
  }

  /// Image under `f`, deduplicated.
  template <class F>
  [[nodiscard]] auto map(F f) const {
    std::vector<std::decay_t<decltype(f(std::declval<const T&>()))>> v;
    v.reserve(items_.size());
    for (const T& x : items_) v.push_back(f(x));
    return SortedSet<typename decltype(v)::value_type>(v.begin(), v.end());
  }

  [[nodiscard]] friend SortedSet set_union(const SortedSet& a, const SortedSet& b) {
    SortedSet out;
    out.items_.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.items_));
    return out;
  }

  /// a ⊆ b
  [[nodiscard]] friend bool is_subset(const SortedSet& a, const SortedSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  /// a ⊂ b
  [[nodiscard]] friend bool is_strict_subset(const SortedSet& a, const SortedSet& b) {
    return a.size() < b.size() && is_subset(a, b);
  }

  auto operator<=>(const SortedSet&) const = default;

  friend void encode(Encoder& e, const SortedSet& s) { encode(e, s.items_); }
  friend void decode(Decoder& d, SortedSet& s) {
    decode(d, s.items_);
    if (!std::is_sorted(s.items_.begin(), s.items_.end()) ||
        std::adjacent_find(s.items_.begin(), s.items_.end()) != s.items_.end()) {
      throw DecodeError("set encoding is not strictly sorted");
    }
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<T> items_;
};

}  // namespace sessionkv

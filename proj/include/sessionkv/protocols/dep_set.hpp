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

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/types.hpp"
#include "sessionkv/protocols/sorted_set.hpp"

namespace sessionkv {

/// Identifies one put (client, timestamp) and the key it wrote.
struct DepEntry {
  ClientId client;
  Timestamp ts;
  Key key;

  SESSIONKV_FIELDS(client, ts, key)
  auto operator<=>(const DepEntry&) const = default;
};

struct LabeledDepEntry {
  ClientId client;
  Timestamp ts;
  Key key;
  TopicLabel label;

  SESSIONKV_FIELDS(client, ts, key, label)
  auto operator<=>(const LabeledDepEntry&) const = default;
};

template <class E>
using DepSet = SortedSet<E>;

/// d|k
template <class E>
[[nodiscard]] DepSet<E> restrict_key(const DepSet<E>& d, Key k) {
  return d.filter([k](const E& e) { return e.key == k; });
}

/// d|c
template <class E>
[[nodiscard]] DepSet<E> restrict_client(const DepSet<E>& d, ClientId c) {
  return d.filter([c](const E& e) { return e.client == c; });
}

/// d|L
[[nodiscard]] inline DepSet<LabeledDepEntry> restrict_labels(const DepSet<LabeledDepEntry>& d,
                                                             const SortedSet<TopicLabel>& labels) {
  return d.filter([&](const LabeledDepEntry& e) { return labels.contains(e.label); });
}

/// D|k applied elementwise to a set of dependency sets.
template <class E>
[[nodiscard]] SortedSet<DepSet<E>> restrict_key_each(const SortedSet<DepSet<E>>& ds, Key k) {
  return ds.map([k](const DepSet<E>& d) { return restrict_key(d, k); });
}

[[nodiscard]] inline SortedSet<DepSet<LabeledDepEntry>> restrict_labels_each(
    const SortedSet<DepSet<LabeledDepEntry>>& ds, const SortedSet<TopicLabel>& labels) {
  return ds.map([&](const DepSet<LabeledDepEntry>& d) { return restrict_labels(d, labels); });
}

/// ⋃ D
template <class E>
[[nodiscard]] DepSet<E> union_all(const SortedSet<DepSet<E>>& ds) {
  DepSet<E> out;
  for (const auto& d : ds) out = set_union(out, d);
  return out;
}

}  // namespace sessionkv

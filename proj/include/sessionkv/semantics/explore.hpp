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


// Bounded breadth-first exploration.
//
// Nodes are (world, external history) pairs, deduplicated by a 128-bit digest
// of both encodings. Because the search is breadth-first, the schedule stored
// for each external history is a shortest one.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/hash.hpp"
#include "sessionkv/kernel/label.hpp"
#include "sessionkv/semantics/world.hpp"

namespace sessionkv {

struct ShortlexLess {
  bool operator()(const ExternalHistory& a, const ExternalHistory& b) const { return shortlex_less(a, b); }
};

using Schedule = std::vector<std::uint32_t>;

template <Protocol P>
struct QuiescentWorld {
  World<P> world;
  Schedule schedule;
};

template <Protocol P>
struct ExplorationResult {
  /// Every prefix projection reached, with the first schedule that reached it.
  std::map<ExternalHistory, Schedule, ShortlexLess> ext_histories;
  /// Deduplicated by canonical encoding, in discovery order.
  std::vector<QuiescentWorld<P>> quiescent_worlds;
  /// Some node at the bound still had an enabled transition.
  bool truncated = false;
  std::size_t nodes = 0;
};

struct ExploreLimits {
  std::size_t max_nodes = 50'000'000;
  /// Rough cap on bytes held by one BFS layer.
  std::size_t max_frontier_bytes = std::size_t{3} << 30;
};

template <Protocol P>
ExplorationResult<P> explore(const P& protocol, const Application& app, Value v0,
                             const std::vector<ReplicaId>& replicas, std::uint32_t step_bound,
                             const ExploreLimits& limits = {}) {
  struct Node {
    World<P> world;
    ExternalHistory ext;
    Schedule schedule;
  };

  ExplorationResult<P> out;
  std::unordered_set<Hash128> seen;
  std::unordered_set<Hash128> quiescent_seen;

  auto digest = [](const Bytes& world_bytes, const ExternalHistory& ext) {
    Bytes b = world_bytes;
    Encoder e;
    encode(e, ext);
    b += e.buffer();
    return hash128(b);
  };
  auto approx_bytes = [](const Node& n, std::size_t world_bytes) {
    return sizeof(Node) + world_bytes * 2 + n.ext.size() * sizeof(EventLabel) + n.schedule.size() * 4;
  };

  std::vector<Node> frontier;
  {
    Node root{initial_world(protocol, app, v0, replicas), {}, {}};
    seen.insert(digest(root.world.canonical(), root.ext));
    frontier.push_back(std::move(root));
  }
  out.ext_histories.emplace(ExternalHistory{}, Schedule{});

  for (std::uint32_t depth = 0;; ++depth) {
    std::vector<Node> next;
    std::size_t next_bytes = 0;
    for (Node& n : frontier) {
      ++out.nodes;
      const auto ts = enabled_transitions(n.world, protocol);
      if (ts.empty()) {
        if (n.world.quiescent() && quiescent_seen.insert(hash128(n.world.canonical())).second) {
          out.quiescent_worlds.push_back(QuiescentWorld<P>{n.world, n.schedule});
        }
        continue;
      }
      if (depth == step_bound) {
        out.truncated = true;
        continue;
      }
      for (std::uint32_t i = 0; i < ts.size(); ++i) {
        Node child{n.world, n.ext, n.schedule};
        const EventLabel l = apply_transition(child.world, ts[i], protocol);
        child.schedule.push_back(i);
        if (is_external(l)) child.ext.push_back(l);
        const Bytes wb = child.world.canonical();
        if (!seen.insert(digest(wb, child.ext)).second) continue;
        if (is_external(l)) out.ext_histories.try_emplace(child.ext, child.schedule);
        next_bytes += approx_bytes(child, wb.size());
        next.push_back(std::move(child));
        if (out.nodes + next.size() > limits.max_nodes || next_bytes > limits.max_frontier_bytes) {
          throw ResourceExhausted("exploration budget exceeded at depth " + std::to_string(depth + 1) +
                                      " with frontier size " + std::to_string(next.size()),
                                  next.size());
        }
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return out;
}

}  // namespace sessionkv

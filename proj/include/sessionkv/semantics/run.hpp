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


// Seeded random execution and schedule replay.

#pragma once

#include <cstdint>
#include <vector>

#include "sessionkv/kernel/label.hpp"
#include "sessionkv/kernel/rng.hpp"
#include "sessionkv/semantics/world.hpp"

namespace sessionkv {

template <Protocol P>
struct RunResult {
  World<P> world;
  History history;
  /// Index into enabled_transitions at every step; feed to replay().
  std::vector<std::uint32_t> choices;
  /// No transition enabled, empty network and all programs done.
  bool quiescent = false;
  /// No transition enabled but messages still pending.
  bool stuck = false;
};

template <Protocol P>
RunResult<P> run_random(const P& protocol, const Application& app, Value v0, const std::vector<ReplicaId>& replicas,
                        std::uint64_t seed, std::uint64_t max_steps) {
  RunResult<P> out{initial_world(protocol, app, v0, replicas), {}, {}, false, false};
  Rng rng(seed);
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    const auto ts = enabled_transitions(out.world, protocol);
    if (ts.empty()) break;
    const auto pick = static_cast<std::uint32_t>(rng.below(ts.size()));
    out.choices.push_back(pick);
    out.history.push_back(apply_transition(out.world, ts[pick], protocol));
  }
  const bool idle = enabled_transitions(out.world, protocol).empty();
  out.quiescent = out.world.quiescent();
  out.stuck = idle && !out.world.network.empty();
  return out;
}

/// Re-executes a recorded choice list. Throws ContractViolation if a choice
/// is out of range for the world it is applied to.
template <Protocol P>
RunResult<P> replay(const P& protocol, const Application& app, Value v0, const std::vector<ReplicaId>& replicas,
                    const std::vector<std::uint32_t>& choices) {
  RunResult<P> out{initial_world(protocol, app, v0, replicas), {}, choices, false, false};
  for (std::uint32_t pick : choices) {
    const auto ts = enabled_transitions(out.world, protocol);
    SESSIONKV_EXPECTS(pick < ts.size(), "replay choice out of range");
    out.history.push_back(apply_transition(out.world, ts[pick], protocol));
  }
  const bool idle = enabled_transitions(out.world, protocol).empty();
  out.quiescent = out.world.quiescent();
  out.stuck = idle && !out.world.network.empty();
  return out;
}

}  // namespace sessionkv

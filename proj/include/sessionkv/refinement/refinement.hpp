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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sessionkv/kernel/label.hpp"
#include "sessionkv/kernel/program.hpp"
#include "sessionkv/protocols/registry.hpp"
#include "sessionkv/semantics/explore.hpp"

namespace sessionkv {

struct Counterexample {
  ExternalHistory history;
  /// Scheduler choices that reproduce `history` on the checked protocol.
  Schedule schedule;
  /// Convergence only: the key and client whose get diverges.
  std::optional<Key> key;
  std::optional<ClientId> client;
};

struct Verdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  std::uint32_t bound = 0;
  /// Some exploration was cut at the bound: "holds" then means "no violation
  /// within the bound".
  bool truncated = false;
};

struct CheckOptions {
  std::uint32_t bound = 20;
  Value v0{0};
  ExploreLimits limits{};
};

struct ExtHistorySet {
  std::map<ExternalHistory, Schedule, ShortlexLess> histories;
  bool truncated = false;
  std::size_t nodes = 0;
};

/// Prefix-closed external histories of `p` running `app`, replicas r1..rn
/// from the protocol's domain.
[[nodiscard]] ExtHistorySet ext_histories(const ProtocolDefinition& p, const Application& app,
                                          const CheckOptions& opts = {});

/// Holds iff every external history of `impl` is one of `spec`.
[[nodiscard]] Verdict check_trace_inclusion(const ProtocolDefinition& impl, const ProtocolDefinition& spec,
                                            const Application& app, const CheckOptions& opts = {});

/// Inclusion over precomputed sets; both must come from the same bound.
[[nodiscard]] Verdict compare_ext_histories(const ExtHistorySet& impl, const ExtHistorySet& spec,
                                            std::uint32_t bound);

/// Holds iff at every quiescent world every replica that can answer a get
/// answers it with the same value.
[[nodiscard]] Verdict check_convergence(const ProtocolDefinition& p, const Application& app,
                                        const CheckOptions& opts = {});

struct HierarchyEdge {
  ProtocolName lower;
  ProtocolName upper;

  auto operator<=>(const HierarchyEdge&) const = default;
};

[[nodiscard]] std::string edge_name(const HierarchyEdge& e);

/// The thirteen refinement arrows.
[[nodiscard]] const std::vector<HierarchyEdge>& hierarchy_edges();

struct BatteryApp {
  std::string name;
  Application app;
};

/// Named applications over the default desk domain.
[[nodiscard]] const std::vector<BatteryApp>& battery();
/// Throws InvalidArgument naming the token.
[[nodiscard]] const BatteryApp& battery_app(const std::string& name);

struct HierarchyConfig {
  Domain domain{};
  StoreKind store = StoreKind::kTree;
  CheckOptions check{};
  std::optional<LabelingConfig> labeling;
  /// Defaults to the full battery.
  std::vector<BatteryApp> apps;
};

struct EdgeResult {
  HierarchyEdge edge;
  std::string app;
  Verdict verdict;
};

/// One result per (edge, app), edges in registry order.
[[nodiscard]] std::vector<EdgeResult> check_hierarchy(const HierarchyConfig& cfg);

/// Folds per-app results into one verdict per edge: the first violation in
/// battery order wins; truncation is or-ed.
[[nodiscard]] std::vector<EdgeResult> aggregate_by_edge(const std::vector<EdgeResult>& per_app);

}  // namespace sessionkv

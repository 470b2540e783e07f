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


#include "sessionkv/refinement/refinement.hpp"

#include <algorithm>
#include <string>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/semantics/explore.hpp"
#include "sessionkv/semantics/run.hpp"

namespace sessionkv {
namespace {

template <Protocol P>
std::optional<Counterexample> find_divergence(const P& p, const QuiescentWorld<P>& q) {
  const World<P>& w = q.world;
  const Domain d = p.domain();
  for (std::uint32_t kk = 0; kk < d.keys; ++kk) {
    const Key k{kk};
    for (std::uint32_t cc = 1; cc <= d.clients; ++cc) {
      const ClientId c{cc};
      auto it = std::lower_bound(w.clients.begin(), w.clients.end(), c,
                                 [](const auto& e, ClientId x) { return e.first < x; });
      typename P::ClientState sigma =
          it != w.clients.end() && it->first == c ? it->second.state : p.client_init(c);
      const auto payload = p.get_req(k, c, std::move(sigma)).payload;

      std::optional<Value> first;
      bool some_refused = false;
      bool diverged = false;
      for (const auto& [r, rt] : w.replicas) {
        if (!p.get_guard(k, payload, c, r, rt.state)) {
          some_refused = true;
          continue;
        }
        const Value v = p.get(k, payload, c, r, rt.state).value;
        if (first && *first != v) diverged = true;
        if (!first) first = v;
      }
      if (first && (diverged || some_refused)) {
        return Counterexample{{}, q.schedule, k, c};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ExtHistorySet ext_histories(const ProtocolDefinition& p, const Application& app, const CheckOptions& opts) {
  return p.visit([&](const auto& proto) {
    auto r = explore(proto, app, opts.v0, default_replicas(proto.domain()), opts.bound, opts.limits);
    return ExtHistorySet{std::move(r.ext_histories), r.truncated, r.nodes};
  });
}

Verdict compare_ext_histories(const ExtHistorySet& impl, const ExtHistorySet& spec, std::uint32_t bound) {
  Verdict v;
  v.bound = bound;
  v.truncated = impl.truncated || spec.truncated;
  // Map iteration is shortlex, so the first miss is the shortest witness.
  for (const auto& [h, sched] : impl.histories) {
    if (!spec.histories.contains(h)) {
      v.holds = false;
      v.counterexample = Counterexample{h, sched, std::nullopt, std::nullopt};
      break;
    }
  }
  return v;
}

Verdict check_trace_inclusion(const ProtocolDefinition& impl, const ProtocolDefinition& spec, const Application& app,
                              const CheckOptions& opts) {
  const Domain a = impl.domain();
  const Domain b = spec.domain();
  if (a.clients != b.clients || a.replicas != b.replicas || a.keys != b.keys || a.values != b.values) {
    throw InvalidArgument("trace inclusion needs both protocols over the same domain");
  }
  return compare_ext_histories(ext_histories(impl, app, opts), ext_histories(spec, app, opts), opts.bound);
}

Verdict check_convergence(const ProtocolDefinition& p, const Application& app, const CheckOptions& opts) {
  return p.visit([&](const auto& proto) {
    const auto replicas = default_replicas(proto.domain());
    auto r = explore(proto, app, opts.v0, replicas, opts.bound, opts.limits);
    Verdict v;
    v.bound = opts.bound;
    v.truncated = r.truncated;
    for (const auto& q : r.quiescent_worlds) {
      if (auto cx = find_divergence(proto, q)) {
        cx->history = ext_history(replay(proto, app, opts.v0, replicas, cx->schedule).history);
        v.holds = false;
        v.counterexample = std::move(cx);
        break;
      }
    }
    return v;
  });
}

std::string edge_name(const HierarchyEdge& e) {
  return std::string(protocol_name(e.lower)) + "->" + protocol_name(e.upper);
}

const std::vector<HierarchyEdge>& hierarchy_edges() {
  using N = ProtocolName;
  static const std::vector<HierarchyEdge> edges{
      {N::kCcImplVc, N::kCcSpec},  {N::kCcImplLf, N::kCcSpec},  {N::kRywMwImpl, N::kRywSpec},
      {N::kRywMwImpl, N::kMwSpec}, {N::kCcSpec, N::kRywSpec},   {N::kCcSpec, N::kMrSpec},
      {N::kCcSpec, N::kLccSpec},   {N::kRywImpl, N::kRywSpec},  {N::kMrImpl, N::kMrSpec},
      {N::kMwImpl, N::kMwSpec},    {N::kRywSpec, N::kRelaxed},  {N::kMwSpec, N::kRelaxed},
      {N::kMrSpec, N::kRelaxed},
  };
  return edges;
}

const std::vector<BatteryApp>& battery() {
  static const std::vector<BatteryApp> apps = [] {
    std::vector<BatteryApp> out;
    out.push_back({"single_writer", ApplicationBuilder().put(1, 0, 1).put(1, 1, 2).build()});
    out.push_back({"read_own_write", ApplicationBuilder().put(1, 0, 1).put(1, 0, 2).get(1, 0, 0).build()});
    out.push_back({"cross_client_read", ApplicationBuilder()
                                            .put(1, 0, 1)
                                            .put(1, 0, 2)
                                            .put(1, 1, 1)
                                            .get(2, 0, 1)
                                            .get(2, 1, 0)
                                            .build()});
    out.push_back({"monotonic_reads",
                   ApplicationBuilder().put(1, 0, 1).put(1, 0, 2).get(2, 0, 0).get(2, 1, 0).get(2, 2, 0).build()});
    out.push_back({"concurrent_writers",
                   ApplicationBuilder().put(1, 0, 1).put(1, 1, 1).put(2, 0, 2).put(2, 1, 2).build()});
    return out;
  }();
  return apps;
}

const BatteryApp& battery_app(const std::string& name) {
  for (const auto& a : battery()) {
    if (a.name == name) return a;
  }
  throw InvalidArgument("unknown battery application: " + name);
}

std::vector<EdgeResult> check_hierarchy(const HierarchyConfig& cfg) {
  const std::vector<BatteryApp>& apps = cfg.apps.empty() ? battery() : cfg.apps;

  // Each protocol appears in several edges; explore it once per app.
  std::map<std::pair<ProtocolName, std::size_t>, ExtHistorySet> cache;
  auto get = [&](ProtocolName n, std::size_t app) -> const ExtHistorySet& {
    auto key = std::make_pair(n, app);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const ProtocolDefinition p = make_protocol_or_default(n, cfg.store, cfg.domain, cfg.labeling);
      it = cache.emplace(key, ext_histories(p, apps[app].app, cfg.check)).first;
    }
    return it->second;
  };

  std::vector<EdgeResult> out;
  for (const HierarchyEdge& e : hierarchy_edges()) {
    for (std::size_t i = 0; i < apps.size(); ++i) {
      out.push_back({e, apps[i].name, compare_ext_histories(get(e.lower, i), get(e.upper, i), cfg.check.bound)});
    }
  }
  return out;
}

std::vector<EdgeResult> aggregate_by_edge(const std::vector<EdgeResult>& per_app) {
  std::vector<EdgeResult> out;
  for (const EdgeResult& r : per_app) {
    auto it = std::find_if(out.begin(), out.end(), [&](const EdgeResult& x) { return x.edge == r.edge; });
    if (it == out.end()) {
      out.push_back(r);
      if (r.verdict.holds) out.back().app = "battery";
      continue;
    }
    it->verdict.truncated = it->verdict.truncated || r.verdict.truncated;
    if (it->verdict.holds && !r.verdict.holds) {
      it->app = r.app;
      it->verdict.holds = false;
      it->verdict.counterexample = r.verdict.counterexample;
    }
  }
  return out;
}

}  // namespace sessionkv

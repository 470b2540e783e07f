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


// Runs the nine acceptance checks and prints one PASS/FAIL line for each.
// Exit status is zero only when all of them pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sessionkv/bench/bench.hpp"
#include "sessionkv/bench/workload.hpp"
#include "sessionkv/cli/cli.hpp"
#include "sessionkv/refinement/refinement.hpp"
#include "sessionkv/semantics/explore.hpp"
#include "support/dfs_oracle.hpp"
#include "support/properties.hpp"

using namespace sessionkv;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path work_dir() {
  static const fs::path p = [] {
    fs::path d = fs::temp_directory_path() / "sessionkv_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return p;
}

Outcome hierarchy() {
  const auto t0 = Clock::now();
  const auto r = cli({"check", "hierarchy", "--bound", "20", "--out-dir", (work_dir() / "hierarchy").string()});
  const double secs = seconds_since(t0);
  const auto ls = lines(r.out);
  std::size_t holds = 0;
  std::string bad;
  for (const auto& l : ls) {
    if (l.find(" verdict=holds ") != std::string::npos) {
      ++holds;
    } else if (bad.empty()) {
      bad = l;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/13 edges hold at bound 20, exit %d, %.1f s", holds, r.code, secs);
  std::string detail = buf;
  if (!bad.empty()) detail += "; first failure: " + bad;
  return {r.code == kExitOk && ls.size() == 13 && holds == 13 && secs <= 600, detail};
}

Outcome negatives() {
  const auto dir = work_dir() / "negatives";
  const auto r = cli({"check", "refinement", "--impl", "relaxed", "--spec", "ryw_spec", "--app", "read_own_write",
                      "--bound", "20", "--out-dir", dir.string()});
  const bool relaxed_caught =
      r.code == kExitViolation && fs::exists(dir / "relaxed__ryw_spec__read_own_write.history") &&
      !slurp(dir / "relaxed__ryw_spec__read_own_write.history").empty();
  std::string detail = std::string("relaxed vs ryw_spec ") + (relaxed_caught ? "caught" : "MISSED");

  const Domain d{};
  CheckOptions opts;
  opts.bound = 20;
  std::size_t caught = 0;
  for (MutantKind m : all_mutants()) {
    const ProtocolDefinition mutant = make_mutant(m, StoreKind::kTree, d);
    const ProtocolName base = mutant_base(m);
    ProtocolName spec = base;
    for (const auto& e : hierarchy_edges()) {
      if (e.lower == base) {
        spec = e.upper;
        break;
      }
    }
    const ProtocolDefinition upper = make_protocol_or_default(spec, StoreKind::kTree, d);
    std::string where;
    for (const auto& a : battery()) {
      const Verdict v = check_trace_inclusion(mutant, upper, a.app, opts);
      if (!v.holds && v.counterexample) {
        where = a.name;
        break;
      }
    }
    detail += "; " + mutant.name() + " vs " + upper.name() + (where.empty() ? " MISSED" : " caught on " + where);
    caught += where.empty() ? 0 : 1;
  }
  return {relaxed_caught && caught == all_mutants().size(), detail};
}

Outcome convergence() {
  const Domain d{};
  CheckOptions opts;
  opts.bound = 20;
  const auto relaxed = make_protocol_or_default(ProtocolName::kRelaxed, StoreKind::kTree, d);
  const Verdict div = check_convergence(relaxed, battery_app("concurrent_writers").app, opts);
  std::size_t ok = 0;
  std::string failed;
  for (ProtocolName n : all_protocols()) {
    const auto def = make_protocol_or_default(n, StoreKind::kTree, d);
    const Verdict v = check_convergence(def, battery_app("single_writer").app, opts);
    if (v.holds) {
      ++ok;
    } else {
      failed += std::string(" ") + protocol_name(n);
    }
  }
  std::string detail = std::string("relaxed on concurrent_writers ") + (div.holds ? "converges (unexpected)" : "diverges") +
                       "; single_writer holds for " + std::to_string(ok) + "/" +
                       std::to_string(all_protocols().size()) + " protocols" + failed;
  return {!div.holds && div.counterexample && ok == all_protocols().size(), detail};
}

template <Protocol P>
bool same_sets(const P& p, const Application& app, std::uint32_t bound, std::size_t& histories) {
  const auto reps = default_replicas(p.domain());
  const auto bfs = explore(p, app, Value{0}, reps, bound);
  const auto dfs = testing::dfs_enumerate(p, app, Value{0}, reps, bound);
  std::set<ExternalHistory> mine;
  for (const auto& [h, s] : bfs.ext_histories) mine.insert(h);
  histories = mine.size();
  return mine == dfs.ext_histories && bfs.truncated == dfs.truncated;
}

Outcome oracle() {
  struct Instance {
    ProtocolName protocol;
    std::string label;
    Application app;
    std::uint32_t bound;
  };
  const std::vector<Instance> pinned{
      {ProtocolName::kRelaxed, "read_own_write", battery_app("read_own_write").app, 20},
      {ProtocolName::kRywImpl, "2x2 put-get", ApplicationBuilder().put(1, 0, 1).get(1, 0, 0).put(2, 0, 2).get(2, 0, 0).build(),
       16},
      {ProtocolName::kCcImplVc, "two single puts", ApplicationBuilder().put(1, 0, 1).put(2, 1, 2).build(), 20},
      {ProtocolName::kMrImpl, "monotonic_reads", battery_app("monotonic_reads").app, 12},
      {ProtocolName::kCcImplLf, "cross_client_read", battery_app("cross_client_read").app, 20},
  };
  std::size_t equal = 0;
  std::string detail;
  for (const auto& in : pinned) {
    const auto def = make_protocol_or_default(in.protocol, StoreKind::kTree, Domain{});
    std::size_t n = 0;
    const bool same = def.visit([&](const auto& p) { return same_sets(p, in.app, in.bound, n); });
    equal += same ? 1 : 0;
    if (!detail.empty()) detail += "; ";
    detail += def.name() + "/" + in.label + " " + (same ? "equal" : "DIFFER") + " (" + std::to_string(n) + ")";
  }
  return {equal == pinned.size(), std::to_string(equal) + "/5 equal: " + detail};
}

Outcome determinism() {
  const auto a = work_dir() / "seed42_a.history";
  const auto b = work_dir() / "seed42_b.history";
  const std::vector<std::string> base{"simulate", "--protocol", "cc_impl_vc", "--app", "cross_client_read", "--seed", "42",
                                      "--out"};
  auto args_a = base;
  args_a.push_back(a.string());
  auto args_b = base;
  args_b.push_back(b.string());
  const auto ra = cli(args_a);
  const auto rb = cli(args_b);
  const std::string ha = slurp(a);
  const bool sim_same = ra.code == kExitOk && rb.code == kExitOk && !ha.empty() && ha == slurp(b) && ra.out == rb.out;

  const WorkloadParams p;
  const auto w1 = generate_workload(p);
  const auto w2 = generate_workload(p);
  const Hash128 h = workload_digest(w1);
  const bool frozen = h.hi == 0x2db9416768d9aadcull && h.lo == 0x8bad627327f764c5ull;
  char buf[200];
  std::snprintf(buf, sizeof buf, "simulate --seed 42 %s; workload digest %016llx%016llx %s", sim_same ? "byte-identical" : "DIFFERS",
                static_cast<unsigned long long>(h.hi), static_cast<unsigned long long>(h.lo),
                frozen && w1 == w2 ? "matches frozen value" : "DOES NOT match frozen value");
  return {sim_same && frozen && w1 == w2, buf};
}

BenchConfig cell(StoreKind s, double put_rate, std::uint32_t n) {
  BenchConfig c;
  c.protocol = ProtocolName::kMrImpl;
  c.store = s;
  c.workload.put_rate = put_rate;
  c.workload.ops_per_worker = n;
  return c;
}

Outcome chain_depth() {
  double slope[3] = {0, 0, 0};
  double r_chain = 0;
  double worst_secs = 0;
  const StoreKind kinds[3] = {StoreKind::kChain, StoreKind::kAssoc, StoreKind::kTree};
  for (int i = 0; i < 3; ++i) {
    const auto t0 = Clock::now();
    const auto reg = chain_depth_regression(cell(kinds[i], 0.2, 1000));
    worst_secs = std::max(worst_secs, seconds_since(t0));
    slope[i] = reg.fit.slope;
    if (i == 0) r_chain = reg.fit.pearson;
  }
  const bool ok = slope[0] > 0 && r_chain >= 0.9 && std::abs(slope[1]) <= 0.1 * slope[0] &&
                  std::abs(slope[2]) <= 0.1 * slope[0] && worst_secs <= 120;
  char buf[240];
  std::snprintf(buf, sizeof buf, "chain slope %.3g us/put r=%.3f; assoc %.3g (%.1f%%), tree %.3g (%.1f%%); slowest cell %.1f s",
                slope[0], r_chain, slope[1], slope[0] > 0 ? 100 * std::abs(slope[1]) / slope[0] : 0.0, slope[2],
                slope[0] > 0 ? 100 * std::abs(slope[2]) / slope[0] : 0.0, worst_secs);
  return {ok, buf};
}

double median_throughput(StoreKind s, std::uint32_t n, bool& stalled) {
  std::vector<double> xs;
  for (int rep = 0; rep < 3; ++rep) {
    const auto r = run_bench(cell(s, 0.5, n));
    stalled |= r.stalled;
    xs.push_back(r.throughput_ops_s);
  }
  std::sort(xs.begin(), xs.end());
  return xs[1];
}

Outcome n_scaling() {
  bool stalled = false;
  const double chain_small = median_throughput(StoreKind::kChain, 1000, stalled);
  const double chain_large = median_throughput(StoreKind::kChain, 20000, stalled);
  const double assoc_small = median_throughput(StoreKind::kAssoc, 1000, stalled);
  const double assoc_large = median_throughput(StoreKind::kAssoc, 20000, stalled);
  const double chain_loss = 1 - chain_large / chain_small;
  const double assoc_loss = 1 - assoc_large / assoc_small;
  char buf[240];
  std::snprintf(buf, sizeof buf, "chain %.0f -> %.0f ops/s (loss %.1f%%); assoc %.0f -> %.0f ops/s (loss %.1f%%)%s",
                chain_small, chain_large, 100 * chain_loss, assoc_small, assoc_large, 100 * assoc_loss,
                stalled ? "; a run stalled" : "");
  return {!stalled && chain_loss >= 0.2 && assoc_loss <= 0.15, buf};
}

Outcome algebra() {
  const std::size_t vc = testing::vc_property_suite(2026, 10'000);
  const std::size_t deps = testing::depset_property_suite(2026, 10'000);
  return {vc == 0 && deps == 0, "vector clock: " + std::to_string(vc) + " failures in 10000 cases; dep set: " +
                                    std::to_string(deps) + " failures in 10000 cases"};
}

Outcome backends() {
  const std::size_t bad = testing::backend_differential(2026, 100, 1000);
  return {bad == 0, std::to_string(bad) + " mismatching scripts out of 100 (1000 ops each, 3 backends)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"refinement hierarchy", hierarchy},   {"negative discrimination", negatives},
      {"convergence discrimination", convergence}, {"oracle equivalence", oracle},
      {"determinism", determinism},          {"chain-depth mechanism", chain_depth},
      {"N-scaling direction", n_scaling},    {"algebra property suites", algebra},
      {"backend differential", backends},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

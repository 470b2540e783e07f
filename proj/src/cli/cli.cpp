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


#include "sessionkv/cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "sessionkv/bench/bench.hpp"
#include "sessionkv/bench/report.hpp"
#include "sessionkv/kernel/error.hpp"
#include "sessionkv/refinement/refinement.hpp"
#include "sessionkv/semantics/run.hpp"

namespace sessionkv {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string render_schedule(const Schedule& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out + "\n";
}

Schedule parse_schedule(const std::string& text) {
  Schedule out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::uint32_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw InvalidArgument("bad schedule entry `" + tok + "`");
    out.push_back(v);
  }
  return out;
}

// Values above one are percentages, so `--put-rates 10,20` and
// `--put-rates 0.1,0.2` mean the same thing.
double as_rate(double x) {
  if (x < 0 || x > 100) throw InvalidArgument("put rate `" + std::to_string(x) + "` out of range");
  return x > 1 ? x / 100 : x;
}

struct Common {
  std::string store = "tree";
  Domain domain{};
  std::uint32_t v0 = 0;
  std::string labeling_file;

  void add(CLI::App* a) {
    a->add_option("--store", store, "chain, assoc or tree");
    a->add_option("--clients", domain.clients);
    a->add_option("--replicas", domain.replicas);
    a->add_option("--keys", domain.keys);
    a->add_option("--values", domain.values);
    a->add_option("--v0", v0, "initial value of every key");
    a->add_option("--labeling", labeling_file, "labeling file for lcc_spec");
  }

  [[nodiscard]] StoreKind store_kind() const { return parse_store(store); }
  [[nodiscard]] std::optional<LabelingConfig> labeling() const {
    if (labeling_file.empty()) return std::nullopt;
    return parse_labeling(read_file(labeling_file), domain);
  }
};

struct AppSource {
  std::string name;
  std::string program;

  void add(CLI::App* a) {
    auto* n = a->add_option("--app", name, "battery application");
    auto* p = a->add_option("--program", program, "program file");
    n->excludes(p);
  }

  // Empty means the whole battery when `all` is set, otherwise `fallback`.
  [[nodiscard]] std::vector<BatteryApp> resolve(bool all, const char* fallback = "read_own_write") const {
    if (!program.empty()) {
      return {BatteryApp{std::filesystem::path(program).stem().string(), parse_application(read_file(program))}};
    }
    if (!name.empty()) return {battery_app(name)};
    if (all) return battery();
    return {battery_app(fallback)};
  }
};

ProtocolDefinition resolve_protocol(const std::string& name, const Common& c) {
  for (MutantKind m : all_mutants()) {
    ProtocolDefinition p = make_mutant(m, c.store_kind(), c.domain);
    if (p.name() == name) return p;
  }
  return make_protocol_or_default(parse_protocol(name), c.store_kind(), c.domain, c.labeling());
}

struct CheckFlags {
  Common common;
  AppSource app;
  std::uint32_t bound = 20;
  std::size_t max_nodes = ExploreLimits{}.max_nodes;
  std::string out_dir = "counterexamples";

  void add(CLI::App* a) {
    common.add(a);
    app.add(a);
    a->add_option("--bound", bound, "step bound");
    a->add_option("--max-nodes", max_nodes, "exploration node budget");
    a->add_option("--out-dir", out_dir, "where counterexamples are written");
  }

  [[nodiscard]] CheckOptions options() const {
    CheckOptions o;
    o.bound = bound;
    o.v0 = Value{common.v0};
    o.limits.max_nodes = max_nodes;
    return o;
  }
};

std::string file_stem(std::string s) {
  for (char& ch : s) {
    if (ch == '/' || ch == '>') ch = '+';
  }
  return s;
}

// Prints one verdict line; returns true on a violation.
bool report_verdict(const std::string& lower, const std::string& upper, const std::string& app, const Verdict& v,
                    const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const char* word = !v.holds ? "violation" : v.truncated ? "truncated" : "holds";
  const std::size_t steps = v.counterexample ? v.counterexample->schedule.size() : v.bound;
  out << "edge=" << lower << "->" << upper << " app=" << app << " verdict=" << word << " steps=" << steps << "\n";
  if (v.holds || !v.counterexample) return !v.holds;
  const auto base = std::filesystem::path(out_dir) / file_stem(lower + "__" + upper + "__" + app);
  const auto hist = base.string() + ".history";
  write_file(hist, render_history(v.counterexample->history));
  write_file(base.string() + ".schedule", render_schedule(v.counterexample->schedule));
  err << "counterexample: " << hist;
  if (v.counterexample->key) {
    err << " (" << to_string(*v.counterexample->client) << " reading " << to_string(*v.counterexample->key) << ")";
  }
  err << "\n";
  return true;
}

int cmd_list(std::ostream& out) {
  for (ProtocolName p : all_protocols()) out << "protocol " << protocol_name(p) << "\n";
  for (StoreKind s : all_stores()) out << "store " << store_name(s) << "\n";
  for (MutantKind m : all_mutants()) out << "mutant " << make_mutant(m, StoreKind::kTree, Domain{}).name() << "\n";
  for (const auto& a : battery()) out << "app " << a.name << "\n";
  return kExitOk;
}

struct SimulateFlags {
  Common common;
  AppSource app;
  std::string protocol = "relaxed";
  std::uint64_t seed = 42;
  std::uint64_t max_steps = 1000;
  std::string out;
  std::string schedule_in;
  std::string schedule_out;
};

int cmd_simulate(const SimulateFlags& f, std::ostream& out) {
  const ProtocolDefinition def = resolve_protocol(f.protocol, f.common);
  const BatteryApp app = f.app.resolve(false).front();
  app.app.validate(def.domain());
  std::optional<Schedule> given;
  if (!f.schedule_in.empty()) given = parse_schedule(read_file(f.schedule_in));

  std::string history;
  std::string trailer;
  std::string schedule;
  def.visit([&](const auto& p) {
    const auto replicas = default_replicas(p.domain());
    const Value v0{f.common.v0};
    auto r = [&] {
      if (!given) return run_random(p, app.app, v0, replicas, f.seed, f.max_steps);
      try {
        return replay(p, app.app, v0, replicas, *given);
      } catch (const ContractViolation&) {
        throw InvalidArgument("schedule " + f.schedule_in + " does not fit " + app.name);
      }
    }();
    history = render_history(r.history);
    trailer = std::string("quiescent=") + (r.quiescent ? "true" : "false") + " steps=" +
              std::to_string(r.history.size()) + "\n";
    schedule = render_schedule(r.choices);
  });
  out << history << trailer;
  if (!f.out.empty()) write_file(f.out, history);
  if (!f.schedule_out.empty()) write_file(f.schedule_out, schedule);
  return kExitOk;
}

int cmd_refinement(const CheckFlags& f, const std::string& impl_name, const std::string& spec_name, std::ostream& out,
                   std::ostream& err) {
  const ProtocolDefinition impl = resolve_protocol(impl_name, f.common);
  const ProtocolDefinition spec = resolve_protocol(spec_name, f.common);
  bool violated = false;
  for (const auto& a : f.app.resolve(true)) {
    a.app.validate(impl.domain());
    const Verdict v = check_trace_inclusion(impl, spec, a.app, f.options());
    violated |= report_verdict(impl.name(), spec.name(), a.name, v, f.out_dir, out, err);
  }
  return violated ? kExitViolation : kExitOk;
}

int cmd_convergence(const CheckFlags& f, const std::string& protocol, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (protocol.empty()) {
    for (ProtocolName p : all_protocols()) names.emplace_back(protocol_name(p));
  } else {
    names.push_back(protocol);
  }
  const auto apps = f.app.resolve(true);
  bool violated = false;
  for (const auto& n : names) {
    const ProtocolDefinition def = resolve_protocol(n, f.common);
    for (const auto& a : apps) {
      a.app.validate(def.domain());
      const Verdict v = check_convergence(def, a.app, f.options());
      violated |= report_verdict(def.name(), "convergence", a.name, v, f.out_dir, out, err);
    }
  }
  return violated ? kExitViolation : kExitOk;
}

int cmd_hierarchy(const CheckFlags& f, bool per_app, std::ostream& out, std::ostream& err) {
  HierarchyConfig cfg;
  cfg.domain = f.common.domain;
  cfg.store = f.common.store_kind();
  cfg.check = f.options();
  cfg.labeling = f.common.labeling();
  if (!f.app.name.empty() || !f.app.program.empty()) cfg.apps = f.app.resolve(true);
  auto results = check_hierarchy(cfg);
  if (!per_app) results = aggregate_by_edge(results);
  bool violated = false;
  for (const auto& r : results) {
    violated |= report_verdict(protocol_name(r.edge.lower), protocol_name(r.edge.upper), r.app, r.verdict, f.out_dir,
                               out, err);
  }
  return violated ? kExitViolation : kExitOk;
}

struct BenchFlags {
  std::string protocol = "mr_impl";
  std::string store = "assoc";
  std::string transport = "inmemory";
  std::string retry = "fixed";
  std::string ordering = "free";
  double put_rate = 0.5;
  std::uint32_t n = 1000;
  std::uint32_t workers = 4;
  std::uint32_t replicas = 2;
  std::uint32_t key_range = 50;
  std::uint32_t val_range = 100'000;
  std::uint64_t seed = 42;
  double wall_cap = 180;
  std::string labeling_file;

  void add(CLI::App* a) {
    a->add_option("--protocol", protocol);
    a->add_option("--store", store);
    a->add_option("--transport", transport, "inmemory or udp");
    a->add_option("--retry", retry, "none | fixed[:us[:n]] | exp[:us[:cap[:n]]]");
    a->add_option("--ordering", ordering, "free or lockstep");
    a->add_option("--workers", workers);
    a->add_option("--replicas", replicas);
    a->add_option("--key-range", key_range);
    a->add_option("--val-range", val_range);
    a->add_option("--seed", seed);
    a->add_option("--wall-cap", wall_cap, "seconds");
    a->add_option("--labeling", labeling_file, "labeling file for lcc_spec");
  }

  [[nodiscard]] BenchConfig config() const {
    BenchConfig c;
    c.protocol = parse_protocol(protocol);
    c.store = parse_store(store);
    c.transport = parse_transport(transport);
    c.retry = parse_retry(retry);
    if (ordering == "free") {
      c.ordering = Ordering::kFree;
    } else if (ordering == "lockstep") {
      c.ordering = Ordering::kLockstep;
    } else {
      throw InvalidArgument("unknown ordering `" + ordering + "`");
    }
    c.workload.num_workers = workers;
    c.workload.ops_per_worker = n;
    c.workload.put_rate = as_rate(put_rate);
    c.workload.key_range = key_range;
    c.workload.val_range = val_range;
    c.workload.seed = seed;
    c.workload.validate();
    c.replicas = replicas;
    if (!(wall_cap > 0)) throw InvalidArgument("wall cap must be positive");
    c.wall_cap_seconds = wall_cap;
    if (!labeling_file.empty()) {
      c.labeling = parse_labeling(read_file(labeling_file), Domain{workers, replicas, key_range, val_range});
    }
    return c;
  }
};

int cmd_bench(const BenchFlags& f, const std::string& out_path, std::ostream& out) {
  const BenchReport r = run_bench(f.config());
  out << "throughput_ops_s=" << r.throughput_ops_s << " p50_us=" << r.p50_us << " p95_us=" << r.p95_us
      << " p99_us=" << r.p99_us << " stalled=" << (r.stalled ? "true" : "false") << " retries=" << r.retries
      << " dropped=" << r.dropped << "\n";
  if (!out_path.empty()) write_report({to_row(r)}, bench_output_path(out_path));
  return r.stalled ? kExitResource : kExitOk;
}

int cmd_sweep(const BenchFlags& f, const std::vector<double>& rates, const std::vector<std::uint32_t>& ns,
              std::uint32_t reps, const std::string& out_path, std::ostream& out) {
  SweepConfig s;
  s.base = f.config();
  for (double x : rates) s.put_rates.push_back(as_rate(x));
  s.ns = ns;
  s.repetitions = reps;
  const auto rows = run_sweep(s);
  const auto path = bench_output_path(out_path);
  write_report(rows, path);
  bool stalled = false;
  for (const auto& row : rows) stalled |= row.stalled;
  out << "rows=" << rows.size() << " path=" << path.string() << "\n";
  return stalled ? kExitResource : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Replicated key-value store protocols: simulation, refinement checking, benchmarks", "sessionkv"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "registered protocols, stores, mutants and applications");

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "one seeded random execution");
  sim.common.add(simulate);
  sim.app.add(simulate);
  simulate->add_option("--protocol", sim.protocol);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--max-steps", sim.max_steps);
  simulate->add_option("--out", sim.out, "history file");
  simulate->add_option("--schedule", sim.schedule_in, "replay a recorded schedule instead of drawing one");
  simulate->add_option("--schedule-out", sim.schedule_out, "write the schedule that was taken");

  auto* check = app.add_subcommand("check", "bounded refinement and convergence checks");
  check->require_subcommand(1);

  CheckFlags ref_flags;
  std::string impl_name;
  std::string spec_name;
  auto* refinement = check->add_subcommand("refinement", "trace inclusion of one protocol in another");
  ref_flags.add(refinement);
  refinement->add_option("--impl", impl_name)->required();
  refinement->add_option("--spec", spec_name)->required();

  CheckFlags conv_flags;
  std::string conv_protocol;
  auto* convergence = check->add_subcommand("convergence", "replicas agree at quiescence");
  conv_flags.add(convergence);
  convergence->add_option("--protocol", conv_protocol, "defaults to every registered protocol");

  CheckFlags hier_flags;
  bool per_app = false;
  auto* hierarchy = check->add_subcommand("hierarchy", "every refinement arrow over the battery");
  hier_flags.add(hierarchy);
  hierarchy->add_flag("--per-app", per_app, "one line per edge and application");

  BenchFlags bench_flags;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "one benchmark cell");
  bench_flags.add(bench);
  bench->add_option("--put-rate", bench_flags.put_rate, "fraction, or percent when above 1");
  bench->add_option("--n", bench_flags.n, "ops per worker");
  bench->add_option("--out", bench_out, "csv file");

  BenchFlags sweep_flags;
  std::vector<double> rates{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  std::vector<std::uint32_t> ns{1000};
  std::uint32_t reps = 3;
  std::string sweep_out = "sweep.csv";
  auto* sweep = app.add_subcommand("sweep", "put-rate by N grid written as csv");
  sweep_flags.add(sweep);
  sweep->add_option("--put-rates", rates, "fractions or percents")->delimiter(',');
  sweep->add_option("--n", ns, "ops per worker")->delimiter(',');
  sweep->add_option("--reps", reps);
  sweep->add_option("--out", sweep_out, "csv file");

  std::vector<const char*> argv{"sessionkv"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list(out);
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (refinement->parsed()) return cmd_refinement(ref_flags, impl_name, spec_name, out, err);
    if (convergence->parsed()) return cmd_convergence(conv_flags, conv_protocol, out, err);
    if (hierarchy->parsed()) return cmd_hierarchy(hier_flags, per_app, out, err);
    if (bench->parsed()) return cmd_bench(bench_flags, bench_out, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, rates, ns, reps, sweep_out, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceExhausted& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace sessionkv

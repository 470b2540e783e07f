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


#include "sessionkv/bench/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {
namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ReportRow to_row(const BenchReport& r) {
  ReportRow row;
  row.protocol = protocol_name(r.config.protocol);
  row.store = store_name(r.config.store);
  row.transport = transport_name(r.config.transport);
  row.put_rate = r.config.workload.put_rate;
  row.n_ops = r.config.workload.ops_per_worker;
  row.workers = r.config.workload.num_workers;
  row.seed = r.config.workload.seed;
  row.throughput_ops_s = r.throughput_ops_s;
  row.p50_us = r.p50_us;
  row.p95_us = r.p95_us;
  row.p99_us = r.p99_us;
  row.peak_mem_bytes = r.peak_mem_bytes;
  row.stalled = r.stalled;
  row.retries = r.retries;
  return row;
}

void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report " + path.string());
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << r.protocol << ',' << r.store << ',' << r.transport << ',' << num(r.put_rate) << ',' << r.n_ops << ','
        << r.workers << ',' << r.seed << ',' << num(r.throughput_ops_s) << ',' << num(r.p50_us) << ','
        << num(r.p95_us) << ',' << num(r.p99_us) << ','
        << (r.peak_mem_bytes ? std::to_string(*r.peak_mem_bytes) : std::string()) << ','
        << (r.stalled ? "true" : "false") << ',' << r.retries << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing report " + path.string());
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read report " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw InvalidArgument("report " + path.string() + " has an unexpected header");
  }
  std::vector<ReportRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (f.size() != 14) throw InvalidArgument(where + ": expected 14 fields");
    try {
      ReportRow r;
      r.protocol = f[0];
      r.store = f[1];
      r.transport = f[2];
      r.put_rate = std::stod(f[3]);
      r.n_ops = std::stoull(f[4]);
      r.workers = static_cast<std::uint32_t>(std::stoul(f[5]));
      r.seed = std::stoull(f[6]);
      r.throughput_ops_s = std::stod(f[7]);
      r.p50_us = std::stod(f[8]);
      r.p95_us = std::stod(f[9]);
      r.p99_us = std::stod(f[10]);
      if (!f[11].empty()) r.peak_mem_bytes = std::stoull(f[11]);
      if (f[12] != "true" && f[12] != "false") throw InvalidArgument("stalled");
      r.stalled = f[12] == "true";
      r.retries = std::stoull(f[13]);
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw InvalidArgument(where + ": malformed row");
    }
  }
  return rows;
}

std::filesystem::path bench_output_path(const std::filesystem::path& requested) {
  const char* dir = std::getenv("SESSIONKV_BENCH_DIR");
  if (dir == nullptr || *dir == '\0') return requested;
  return std::filesystem::path(dir) / requested.filename();
}

std::vector<ReportRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.put_rates.empty() || cfg.ns.empty()) throw InvalidArgument("sweep needs put rates and sizes");
  std::vector<ReportRow> rows;
  for (double rate : cfg.put_rates) {
    for (std::uint32_t n : cfg.ns) {
      for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
        BenchConfig c = cfg.base;
        c.workload.put_rate = rate;
        c.workload.ops_per_worker = n;
        rows.push_back(to_row(run_bench(c)));
      }
    }
  }
  return rows;
}

}  // namespace sessionkv

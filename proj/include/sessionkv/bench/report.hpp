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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sessionkv/bench/bench.hpp"

namespace sessionkv {

/// One CSV row.
struct ReportRow {
  std::string protocol;
  std::string store;
  std::string transport;
  double put_rate = 0;
  std::uint64_t n_ops = 0;
  std::uint32_t workers = 0;
  std::uint64_t seed = 0;
  double throughput_ops_s = 0;
  double p50_us = 0;
  double p95_us = 0;
  double p99_us = 0;
  std::optional<std::uint64_t> peak_mem_bytes;
  bool stalled = false;
  std::uint64_t retries = 0;

  bool operator==(const ReportRow&) const = default;
};

inline constexpr const char* kReportHeader =
    "protocol,store,transport,put_rate,n_ops,workers,seed,throughput_ops_s,p50_us,p95_us,p99_us,peak_mem_bytes,"
    "stalled,retries";

[[nodiscard]] ReportRow to_row(const BenchReport& r);

/// Header plus one row per entry. Numbers are written so that read_report
/// returns equal rows. Throws IoError naming the path.
void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path);
[[nodiscard]] std::vector<ReportRow> read_report(const std::filesystem::path& path);

/// `requested` with its directory replaced by $SESSIONKV_BENCH_DIR when set.
[[nodiscard]] std::filesystem::path bench_output_path(const std::filesystem::path& requested);

struct SweepConfig {
  BenchConfig base;
  std::vector<double> put_rates;
  std::vector<std::uint32_t> ns;  // ops per worker
  std::uint32_t repetitions = 3;
};

/// One row per (put rate, N, repetition), in that nesting order.
[[nodiscard]] std::vector<ReportRow> run_sweep(const SweepConfig& cfg);

}  // namespace sessionkv

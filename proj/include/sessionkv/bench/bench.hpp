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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sessionkv/bench/stats.hpp"
#include "sessionkv/bench/transport.hpp"
#include "sessionkv/bench/workload.hpp"
#include "sessionkv/protocols/registry.hpp"

namespace sessionkv {

/// What a replica does with a request whose guard is false.
struct RetryPolicy {
  enum class Kind : std::uint8_t { kNone, kFixed, kExponential };

  Kind kind = Kind::kFixed;
  std::chrono::microseconds interval{20};  // fixed delay, or exponential base
  std::chrono::microseconds cap{2000};     // exponential only
  std::uint32_t max_attempts = 1'000'000;

  static RetryPolicy none();
  static RetryPolicy fixed(std::chrono::microseconds interval, std::uint32_t max_attempts);
  static RetryPolicy exponential(std::chrono::microseconds base, std::chrono::microseconds cap,
                                 std::uint32_t max_attempts);

  /// Delay before re-check number `attempt` (1-based), or nullopt to drop.
  [[nodiscard]] std::optional<std::chrono::microseconds> delay(std::uint32_t attempt) const;

  [[nodiscard]] std::string str() const;
};

/// "none", "fixed[:<us>[:<attempts>]]", "exp[:<base_us>[:<cap_us>[:<attempts>]]]".
[[nodiscard]] RetryPolicy parse_retry(const std::string& text);

enum class Ordering : std::uint8_t {
  /// One thread per worker and per replica.
  kFree,
  /// One driver thread: workers issue in round-robin order and every message
  /// is delivered before the next operation. Outcomes are reproducible.
  kLockstep,
};

struct BenchConfig {
  ProtocolName protocol = ProtocolName::kMrImpl;
  StoreKind store = StoreKind::kAssoc;
  TransportKind transport = TransportKind::kInMemory;
  RetryPolicy retry{};
  WorkloadParams workload{};
  std::uint32_t replicas = 2;
  double wall_cap_seconds = 180;
  Ordering ordering = Ordering::kFree;
  std::optional<LabelingConfig> labeling;
};

struct GetSample {
  std::uint32_t worker = 0;
  /// Puts preceding this get in the worker's own trace.
  std::uint32_t depth = 0;
  /// Request send to response receipt, at the worker.
  double latency_us = 0;
  /// Guard and get evaluation at the serving replica.
  double service_us = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<double> worker_seconds;
  std::vector<std::uint64_t> worker_ops;  // completed per worker
  double throughput_ops_s = 0;
  std::vector<double> latencies_us;  // pooled, all completed ops
  double p50_us = 0;
  double p95_us = 0;
  double p99_us = 0;
  std::optional<std::uint64_t> peak_mem_bytes;
  bool stalled = false;
  std::uint64_t retries = 0;
  std::uint64_t dropped = 0;  // guard drops plus transport drops
  std::vector<GetSample> gets;
  /// Values read, per worker in op order; nullopt for puts.
  std::vector<std::vector<std::optional<Value>>> outcomes;
};

/// Sum over workers of completed ops / wall seconds; workers with zero time
/// contribute nothing.
[[nodiscard]] double throughput(const std::vector<std::uint64_t>& ops, const std::vector<double>& seconds);

/// Throws InvalidArgument on a bad configuration, IoError if the transport
/// cannot be set up. Hitting the wall cap sets `stalled`.
[[nodiscard]] BenchReport run_bench(const BenchConfig& cfg);

struct DepthRegression {
  LineFit fit;
  /// (depth, median service time in microseconds), ascending depth.
  std::vector<std::pair<double, double>> points;
};

/// Per-depth medians of replica-side get service time, then OLS on depth.
[[nodiscard]] DepthRegression depth_regression(const std::vector<GetSample>& gets);

[[nodiscard]] DepthRegression chain_depth_regression(const BenchConfig& cfg);

/// VmHWM of this process, if the platform reports it.
[[nodiscard]] std::optional<std::uint64_t> peak_resident_bytes();

}  // namespace sessionkv

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
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/hash.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

struct WorkloadParams {
  std::uint32_t num_workers = 4;
  std::uint32_t ops_per_worker = 1000;
  double put_rate = 0.5;
  std::uint32_t key_range = 50;
  std::uint32_t val_range = 100'000;
  std::uint64_t seed = 42;

  /// Throws InvalidArgument on put_rate outside [0,1], empty ranges, or
  /// key_range > val_range.
  void validate() const;
};

enum class OpKind : std::uint8_t { kGet = 0, kPut = 1 };

struct Op {
  OpKind kind = OpKind::kGet;
  Key key;
  Value value;  // zero for gets

  auto operator<=>(const Op&) const = default;

  friend void encode(Encoder& e, const Op& op) {
    e.u8(static_cast<std::uint8_t>(op.kind));
    encode(e, op.key);
    encode(e, op.value);
  }
};

using OpList = std::vector<Op>;

/// Worker w draws from Rng(derive_seed(seed, w)): put with probability
/// put_rate, then key, then (puts only) value.
[[nodiscard]] std::vector<OpList> generate_workload(const WorkloadParams& p);

/// Digest of the canonical encoding of a workload.
[[nodiscard]] Hash128 workload_digest(const std::vector<OpList>& w);

}  // namespace sessionkv

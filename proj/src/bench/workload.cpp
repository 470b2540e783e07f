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


#include "sessionkv/bench/workload.hpp"

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/rng.hpp"

namespace sessionkv {

void WorkloadParams::validate() const {
  if (!(put_rate >= 0.0 && put_rate <= 1.0)) throw InvalidArgument("put rate must lie in [0,1]");
  if (num_workers == 0) throw InvalidArgument("at least one worker is required");
  if (key_range == 0) throw InvalidArgument("key range must be positive");
  if (val_range < key_range) throw InvalidArgument("value range must be at least the key range");
}

std::vector<OpList> generate_workload(const WorkloadParams& p) {
  p.validate();
  std::vector<OpList> out(p.num_workers);
  for (std::uint32_t w = 0; w < p.num_workers; ++w) {
    Rng rng(derive_seed(p.seed, w));
    OpList& ops = out[w];
    ops.reserve(p.ops_per_worker);
    for (std::uint32_t i = 0; i < p.ops_per_worker; ++i) {
      Op op;
      op.kind = rng.chance(p.put_rate) ? OpKind::kPut : OpKind::kGet;
      op.key = Key{static_cast<std::uint32_t>(rng.below(p.key_range))};
      if (op.kind == OpKind::kPut) op.value = Value{static_cast<std::uint32_t>(rng.below(p.val_range))};
      ops.push_back(op);
    }
  }
  return out;
}

Hash128 workload_digest(const std::vector<OpList>& w) { return hash128(to_bytes(w)); }

}  // namespace sessionkv

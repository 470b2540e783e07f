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
#include <vector>

#include "sessionkv/kernel/encoding.hpp"
#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

/// Total map ClientId -> Timestamp over clients 0..width-1 (slot 0 is c0).
class VectorClock {
 public:
  VectorClock() = default;
  explicit VectorClock(std::size_t width) : slots_(width) {}
  explicit VectorClock(std::vector<Timestamp> slots) : slots_(std::move(slots)) {}

  [[nodiscard]] std::size_t width() const { return slots_.size(); }

  [[nodiscard]] Timestamp operator[](ClientId c) const {
    SESSIONKV_EXPECTS(c.value < slots_.size(), "client outside vector clock");
    return slots_[c.value];
  }

  void set(ClientId c, Timestamp t) {
    SESSIONKV_EXPECTS(c.value < slots_.size(), "client outside vector clock");
    slots_[c.value] = t;
  }

  [[nodiscard]] const std::vector<Timestamp>& slots() const { return slots_; }

  auto operator<=>(const VectorClock&) const = default;

  SESSIONKV_FIELDS(slots_)

 private:
  std::vector<Timestamp> slots_;
};

/// Pointwise a <= b. Clocks must have the same width.
[[nodiscard]] bool vc_leq(const VectorClock& a, const VectorClock& b);

/// Pointwise maximum.
[[nodiscard]] VectorClock vc_max(const VectorClock& a, const VectorClock& b);

}  // namespace sessionkv

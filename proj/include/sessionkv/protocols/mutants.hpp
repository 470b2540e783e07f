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


// Deliberately broken protocol variants used to check that refinement
// checking discriminates.

#pragma once

#include <string>
#include <utility>

#include "sessionkv/kernel/types.hpp"

namespace sessionkv {

/// `P` with a get-guard that admits every read.
template <class P>
class GetGuardForcedTrue : public P {
 public:
  explicit GetGuardForcedTrue(P base) : P(std::move(base)) {}

  [[nodiscard]] std::string name() const { return P::name() + "/get_guard_true"; }

  bool get_guard(Key, const typename P::GetPayload&, ClientId, ReplicaId, const typename P::ReplicaState&) const {
    return true;
  }
};

/// `P` with a put-guard that applies every put on arrival.
template <class P>
class PutGuardForcedTrue : public P {
 public:
  explicit PutGuardForcedTrue(P base) : P(std::move(base)) {}

  [[nodiscard]] std::string name() const { return P::name() + "/put_guard_true"; }

  bool put_guard(Key, Value, const typename P::PutPayload&, ClientId, ReplicaId,
                 const typename P::ReplicaState&) const {
    return true;
  }
};

}  // namespace sessionkv

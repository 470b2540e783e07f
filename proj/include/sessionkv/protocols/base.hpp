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
#include <string>
#include <vector>

#include "sessionkv/kernel/types.hpp"
#include "sessionkv/protocols/store.hpp"
#include "sessionkv/protocols/vector_clock.hpp"

namespace sessionkv {

/// Domain and store configuration shared by every protocol.
class ProtocolBase {
 public:
  ProtocolBase(Domain domain, StoreKind store) : domain_(domain), store_(store) {}

  [[nodiscard]] Domain domain() const { return domain_; }
  [[nodiscard]] StoreKind store() const { return store_; }

 protected:
  template <class Entry>
  [[nodiscard]] KeyStore<Entry> make_store(Entry initial) const {
    return KeyStore<Entry>(store_, domain_.keys, std::move(initial));
  }

  /// K ↦ T, all zero.
  [[nodiscard]] std::vector<Timestamp> zero_per_key() const { return std::vector<Timestamp>(domain_.keys); }

  /// C ↦ T over c0 and every real client, all zero.
  [[nodiscard]] VectorClock zero_clock() const { return VectorClock(domain_.clock_width()); }

 private:
  Domain domain_;
  StoreKind store_;
};

}  // namespace sessionkv

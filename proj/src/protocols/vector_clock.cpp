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


#include "sessionkv/protocols/vector_clock.hpp"

#include <algorithm>

namespace sessionkv {

bool vc_leq(const VectorClock& a, const VectorClock& b) {
  SESSIONKV_EXPECTS(a.width() == b.width(), "vector clocks over different client sets");
  const auto& x = a.slots();
  const auto& y = b.slots();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

VectorClock vc_max(const VectorClock& a, const VectorClock& b) {
  SESSIONKV_EXPECTS(a.width() == b.width(), "vector clocks over different client sets");
  std::vector<Timestamp> out(a.width());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(a.slots()[i], b.slots()[i]);
  return VectorClock(std::move(out));
}

}  // namespace sessionkv

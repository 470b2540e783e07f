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
#include <cstdint>
#include <functional>
#include <string_view>

namespace sessionkv {

/// 128-bit non-cryptographic digest used for state deduplication.
struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  auto operator<=>(const Hash128&) const = default;
};

Hash128 hash128(std::string_view bytes);

/// Order-dependent combination of two digests.
Hash128 combine(const Hash128& a, const Hash128& b);

}  // namespace sessionkv

template <>
struct std::hash<sessionkv::Hash128> {
  std::size_t operator()(const sessionkv::Hash128& h) const noexcept { return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ull)); }
};

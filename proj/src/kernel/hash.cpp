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


#include "sessionkv/kernel/hash.hpp"

#include <cstring>

namespace sessionkv {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

constexpr std::uint64_t fmix(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdull;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ull;
  k ^= k >> 33;
  return k;
}

}  // namespace

// Two-lane block mix in the style of MurmurHash3 x64/128.
Hash128 hash128(std::string_view bytes) {
  constexpr std::uint64_t c1 = 0x87c37b91114253d5ull;
  constexpr std::uint64_t c2 = 0x4cf5ad432745937full;
  std::uint64_t h1 = 0x243f6a8885a308d3ull;
  std::uint64_t h2 = 0x13198a2e03707344ull;
  const std::size_t n = bytes.size();
  const char* p = bytes.data();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    std::uint64_t k1;
    std::uint64_t k2;
    std::memcpy(&k1, p + i, 8);
    std::memcpy(&k2, p + i + 8, 8);
    k1 *= c1;
    k1 = rotl(k1, 31);
    k1 *= c2;
    h1 ^= k1;
    h1 = rotl(h1, 27);
    h1 += h2;
    h1 = h1 * 5 + 0x52dce729;
    k2 *= c2;
    k2 = rotl(k2, 33);
    k2 *= c1;
    h2 ^= k2;
    h2 = rotl(h2, 31);
    h2 += h1;
    h2 = h2 * 5 + 0x38495ab5;
  }
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  const std::size_t rest = n - i;
  if (rest > 8) {
    std::memcpy(&k1, p + i, 8);
    std::memcpy(&k2, p + i + 8, rest - 8);
  } else if (rest > 0) {
    std::memcpy(&k1, p + i, rest);
  }
  if (rest > 8) {
    k2 *= c2;
    k2 = rotl(k2, 33);
    k2 *= c1;
    h2 ^= k2;
  }
  if (rest > 0) {
    k1 *= c1;
    k1 = rotl(k1, 31);
    k1 *= c2;
    h1 ^= k1;
  }
  h1 ^= n;
  h2 ^= n;
  h1 += h2;
  h2 += h1;
  h1 = fmix(h1);
  h2 = fmix(h2);
  h1 += h2;
  h2 += h1;
  return Hash128{h1, h2};
}

Hash128 combine(const Hash128& a, const Hash128& b) {
  return Hash128{fmix(a.hi ^ rotl(b.hi, 17) ^ 0x9e3779b97f4a7c15ull) ^ b.lo,
                 fmix(a.lo + rotl(b.lo, 29) + 0x632be59bd9b4e019ull) ^ b.hi};
}

}  // namespace sessionkv

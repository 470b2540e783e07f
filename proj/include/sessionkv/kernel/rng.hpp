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


// Deterministic random numbers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions shipped with the standard library are not, so
// bounded and Bernoulli draws are done here to keep seeded streams identical
// across standard library implementations.

#pragma once

#include <cstdint>
#include <random>

namespace sessionkv {

class Rng {
  __extension__ using u128 = unsigned __int128;

 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection of the biased low range.
    u128 m = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p; p <= 0 never, p >= 1 always.
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive independent per-stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

}  // namespace sessionkv

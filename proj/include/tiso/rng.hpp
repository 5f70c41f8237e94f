/*
 * Copyright 2026 The tiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace tiso {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 128-bit seed for stream `index` under `master`:
///   hi = splitmix64(master ^ splitmix64(index)),
///   lo = splitmix64(hi ^ 0x5851f42d4c957f2d ^ index).
/// A pure function of (master, index), so any trial can be replayed alone.
struct Seed128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  static constexpr Seed128 derive(std::uint64_t master, std::uint64_t index) noexcept {
    const std::uint64_t hi = splitmix64(master ^ splitmix64(index));
    const std::uint64_t lo = splitmix64(hi ^ 0x5851f42d4c957f2dULL ^ index);
    return {hi, lo};
  }
};

/// Explicit random stream. Never shared between threads; use fork() for
/// independent substreams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(Seed128::derive(seed, 0)) {}

  explicit Rng(Seed128 s) : seed_(s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.hi >> 32), static_cast<std::uint32_t>(s.hi),
                      static_cast<std::uint32_t>(s.lo >> 32), static_cast<std::uint32_t>(s.lo)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). Rejection sampling keeps this identical
  /// across standard library implementations.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Independent substream keyed by `label`.
  Rng fork(std::uint64_t label) const { return Rng(Seed128::derive(seed_.hi ^ seed_.lo, label)); }

  Rng fork(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return fork(h);
  }

 private:
  Seed128 seed_;
  std::mt19937_64 engine_;
};

}  // namespace tiso

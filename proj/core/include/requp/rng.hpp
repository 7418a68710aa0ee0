// Copyright 2026 The requp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>

namespace requp {

/// SplitMix64 (Steele, Lea & Flood 2014). Chosen because it is tiny, fast,
/// bit-for-bit portable across platforms, and splittable: independent streams
/// are derived by hashing, not by jumping, so every dataset and every
/// repetition can carry its own self-contained seed.
///
/// All randomness in this project flows through this generator; std::mt19937
/// and friends are avoided because distribution code in libstdc++ is not
/// guaranteed to produce identical streams across standard library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform double in [lo, hi).
  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

 private:
  std::uint64_t state_;
};

/// Deterministic seed derivation: folds a sequence of 64-bit words into one
/// seed by chaining the SplitMix64 finalizer. Used to split a master seed
/// into per-cell, per-repetition, per-stream seeds. The word order is part of
/// the on-disk reproducibility contract: changing it invalidates recorded
/// seeds.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words) {
    SplitMix64 mixer(h ^ w);
    h = mixer.next();
  }
  return h;
}

}  // namespace requp

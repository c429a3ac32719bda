// Copyright 2026 The Unsharp Authors
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
#include <random>

namespace unsharp {

/// splitmix64 finalizer. Used to turn (seed, stream index) pairs into
/// well-separated engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for logical stream `k` of a run seeded with `seed`:
/// mix64(seed XOR mix64(k)). Streams for distinct k are independent for all
/// practical purposes and the rule is platform independent.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed ^ mix64(k));
}

/// Seedable, reproducible generator. Wraps std::mt19937_64, whose output
/// sequence is fully specified by the standard, and converts to doubles with
/// an explicit 53-bit rule so results are bit-identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits: (u64 >> 11) * 2^-53.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace unsharp

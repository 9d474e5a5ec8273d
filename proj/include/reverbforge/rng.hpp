// Copyright 2026 The ReverbForge Authors
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
#include <string_view>

namespace reverbforge {

/// 64-bit FNV-1a. Used for substream keying and input checksums; not a
/// cryptographic hash.
uint64_t fnv1a64(const void* data, std::size_t size,
                 uint64_t state = 14695981039346656037ull);
uint64_t fnv1a64(std::string_view text);

uint64_t splitmix64(uint64_t& state);

/// Deterministic uniform source. The engine is mt19937_64 (fully specified
/// by the standard); uniform doubles and bounded integers are synthesized
/// from raw 64-bit draws rather than std::uniform_*_distribution, whose
/// output is implementation-defined. Streams are therefore reproducible
/// across compilers and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t uniform_index(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Standard normal via Box-Muller (deterministic, no cached state).
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

/// Stable substream key for per-item randomness. Parallel and resumed runs
/// agree because the key depends only on (seed, domain, id, index), never on
/// iteration order.
uint64_t substream_key(uint64_t seed, std::string_view domain,
                       std::string_view id, uint64_t index = 0);

}  // namespace reverbforge

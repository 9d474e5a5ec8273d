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

#include "reverbforge/rng.hpp"

#include <cmath>
#include <numbers>

namespace reverbforge {

uint64_t fnv1a64(const void* data, std::size_t size, uint64_t state) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    state ^= bytes[i];
    state *= 1099511628211ull;
  }
  return state;
}

uint64_t fnv1a64(std::string_view text) {
  return fnv1a64(text.data(), text.size());
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::gaussian() {
  // Box-Muller on two fresh uniforms; u1 nudged away from 0.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t substream_key(uint64_t seed, std::string_view domain,
                       std::string_view id, uint64_t index) {
  uint64_t h = fnv1a64(domain);
  h = fnv1a64(id.data(), id.size(), h);
  h = fnv1a64(&seed, sizeof(seed), h);
  h = fnv1a64(&index, sizeof(index), h);
  // One scrambling round so adjacent keys do not seed correlated engines.
  uint64_t state = h;
  return splitmix64(state);
}

}  // namespace reverbforge

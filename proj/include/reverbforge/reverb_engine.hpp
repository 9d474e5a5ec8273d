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
//
// Reverberation engine: FFT fast convolution of speech with RIRs, amplitude
// scaling with a clipping guard, and seeded RIR/scale recipe draws.

#ifndef REVERBFORGE_REVERB_ENGINE_HPP_
#define REVERBFORGE_REVERB_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reverbforge/rng.hpp"
#include "reverbforge/types.hpp"

namespace reverbforge {

// Full linear convolution (length N + M - 1). Tiny kernels are convolved
// directly (exact); everything else goes through a zero-padded FFT and
// matches direct convolution within 1e-6.
Samples fft_convolve(SampleRef x, SampleRef h);

// Convolves speech with an RIR. The sample rates must match exactly; this
// toolkit never resamples silently.
Waveform convolve(const Waveform& speech, const ImpulseResponse& ir);

struct FinalizeResult {
  Waveform wave;
  bool renormalized = false;  // set when the clipping guard engaged
};

// Applies the amplitude scale, renormalizes the peak to 0.999 if any sample
// would exceed full scale, and finally trims to `trim_to` samples when given
// (the trim-to-input policy for training streams; evaluation sets keep the
// full reverberant tail).
FinalizeResult finalize(const Waveform& reverb, double scale,
                        std::optional<Eigen::Index> trim_to = std::nullopt);

struct ReverbRecipe {
  std::string rir_id;
  double scale = 1.0;        // amplitude factor in [scale_min, scale_max]
  std::uint64_t seed_tag = 0;  // substream key that produced the draw
};

// Uniform RIR choice plus a uniform scale draw from the same stream.
ReverbRecipe draw_recipe(Rng& rng, const std::vector<std::string>& rir_ids,
                         double scale_min = 0.4, double scale_max = 1.0,
                         std::uint64_t seed_tag = 0);

}  // namespace reverbforge

#endif  // REVERBFORGE_REVERB_ENGINE_HPP_

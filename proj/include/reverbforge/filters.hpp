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
// Octave-band filtering used for per-band decay analysis and reshaping.

#ifndef REVERBFORGE_FILTERS_HPP_
#define REVERBFORGE_FILTERS_HPP_

#include <vector>

#include "reverbforge/types.hpp"

namespace reverbforge {

// Biquad section coefficients, normalized so a0 == 1.
struct Biquad {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  // Causal direct-form-II-transposed filtering from zero initial state.
  Samples apply(SampleRef x) const;
};

// RBJ audio-cookbook band-pass with constant 0 dB peak gain at center_hz.
// Requires 0 < center_hz < sample_rate / 2.
Biquad design_bandpass(double center_hz, double q, double sample_rate);

// Fourth-order band-pass: the Q = sqrt(2) octave biquad applied twice.
Samples octave_bandpass(SampleRef x, double center_hz, double sample_rate);

// Octave-spaced center frequencies 125 * 2^k Hz strictly below Nyquist,
// e.g. {125, 250, 500, 1000, 2000, 4000} at 16 kHz.
std::vector<double> default_octave_centers(double sample_rate);

}  // namespace reverbforge

#endif  // REVERBFORGE_FILTERS_HPP_

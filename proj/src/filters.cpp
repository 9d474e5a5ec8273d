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

#include "reverbforge/filters.hpp"

#include <cmath>
#include <numbers>

#include "reverbforge/errors.hpp"

namespace reverbforge {

Samples Biquad::apply(SampleRef x) const {
  Samples y(x.size());
  double s1 = 0.0, s2 = 0.0;
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    const double in = x[n];
    const double out = b0 * in + s1;
    s1 = b1 * in - a1 * out + s2;
    s2 = b2 * in - a2 * out;
    y[n] = out;
  }
  return y;
}

Biquad design_bandpass(double center_hz, double q, double sample_rate) {
  if (!(center_hz > 0.0) || !(center_hz < sample_rate / 2.0)) {
    throw ValidationError("band-pass center must lie in (0, Nyquist)");
  }
  if (!(q > 0.0)) throw ValidationError("band-pass Q must be positive");

  const double w0 = 2.0 * std::numbers::pi * center_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;

  Biquad bq;
  bq.b0 = alpha / a0;
  bq.b1 = 0.0;
  bq.b2 = -alpha / a0;
  bq.a1 = -2.0 * std::cos(w0) / a0;
  bq.a2 = (1.0 - alpha) / a0;
  return bq;
}

Samples octave_bandpass(SampleRef x, double center_hz, double sample_rate) {
  const Biquad bq =
      design_bandpass(center_hz, std::numbers::sqrt2, sample_rate);
  return bq.apply(bq.apply(x));
}

std::vector<double> default_octave_centers(double sample_rate) {
  std::vector<double> centers;
  for (double c = 125.0; c < sample_rate / 2.0; c *= 2.0) {
    centers.push_back(c);
  }
  return centers;
}

}  // namespace reverbforge

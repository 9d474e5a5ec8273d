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

#include "reverbforge/reverb_engine.hpp"

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "reverbforge/errors.hpp"

namespace reverbforge {
namespace {

// Below this kernel size the O(NM) loop beats the FFT setup cost, and the
// delta-kernel identity stays exact.
constexpr Eigen::Index kDirectKernelLimit = 8;

Samples direct_convolve(SampleRef x, SampleRef h) {
  Samples y = Samples::Zero(x.size() + h.size() - 1);
  for (Eigen::Index j = 0; j < h.size(); ++j) {
    if (h[j] == 0.0) continue;
    y.segment(j, x.size()) += h[j] * x;
  }
  return y;
}

}  // namespace

Samples fft_convolve(SampleRef x, SampleRef h) {
  if (x.size() == 0 || h.size() == 0) {
    throw ValidationError("convolution operands must be non-empty");
  }
  if (std::min(x.size(), h.size()) <= kDirectKernelLimit) {
    return x.size() < h.size() ? direct_convolve(h, x)
                               : direct_convolve(x, h);
  }

  const Eigen::Index out_len = x.size() + h.size() - 1;
  std::size_t nfft = 1;
  while (nfft < static_cast<std::size_t>(out_len)) nfft <<= 1;

  std::vector<double> xa(nfft, 0.0), ha(nfft, 0.0);
  Eigen::Map<Samples>(xa.data(), x.size()) = x;
  Eigen::Map<Samples>(ha.data(), h.size()) = h;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec_x, spec_h;
  fft.fwd(spec_x, xa);
  fft.fwd(spec_h, ha);
  for (std::size_t k = 0; k < spec_x.size(); ++k) spec_x[k] *= spec_h[k];
  std::vector<double> y;
  fft.inv(y, spec_x);

  return Eigen::Map<Samples>(y.data(), out_len);
}

Waveform convolve(const Waveform& speech, const ImpulseResponse& ir) {
  if (speech.sample_rate != ir.wave.sample_rate) {
    throw ValidationError(
        "sample-rate mismatch between speech (" +
        std::to_string(speech.sample_rate) + " Hz) and RIR '" + ir.rir_id +
        "' (" + std::to_string(ir.wave.sample_rate) + " Hz)");
  }
  Waveform out;
  out.samples = fft_convolve(speech.samples, ir.wave.samples);
  out.sample_rate = speech.sample_rate;
  out.source_id = speech.source_id;
  return out;
}

FinalizeResult finalize(const Waveform& reverb, double scale,
                        std::optional<Eigen::Index> trim_to) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ValidationError("scale must lie in (0, 1]");
  }
  FinalizeResult result;
  result.wave.sample_rate = reverb.sample_rate;
  result.wave.source_id = reverb.source_id;
  result.wave.samples = reverb.samples * scale;

  const double peak = result.wave.samples.abs().maxCoeff();
  if (peak > 1.0) {
    result.wave.samples *= 0.999 / peak;
    result.renormalized = true;
  }
  if (trim_to) {
    const Eigen::Index n =
        std::min<Eigen::Index>(*trim_to, result.wave.samples.size());
    result.wave.samples = result.wave.samples.head(n).eval();
  }
  return result;
}

ReverbRecipe draw_recipe(Rng& rng, const std::vector<std::string>& rir_ids,
                         double scale_min, double scale_max,
                         std::uint64_t seed_tag) {
  if (rir_ids.empty()) throw ValidationError("empty RIR inventory");
  ReverbRecipe recipe;
  recipe.rir_id = rir_ids[rng.uniform_index(rir_ids.size())];
  recipe.scale = rng.uniform(scale_min, scale_max);
  recipe.seed_tag = seed_tag;
  return recipe;
}

}  // namespace reverbforge

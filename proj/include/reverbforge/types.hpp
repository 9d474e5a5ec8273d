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

#include <Eigen/Core>

#include <limits>
#include <string>
#include <vector>

namespace reverbforge {

/// Sample buffers are dense 1-D Eigen arrays of doubles, normalized so that
/// full scale is +-1.0. Disk precision (16-bit PCM / 32-bit float) only
/// matters at the wave-io boundary.
using Samples = Eigen::ArrayXd;
using SampleRef = Eigen::Ref<const Eigen::ArrayXd>;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// A mono waveform with its sample rate and an opaque origin tag.
struct Waveform {
  Samples samples;
  int sample_rate = 0;
  std::string source_id;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class RirKind { recorded, synthetic, simulated };

std::string to_string(RirKind kind);
RirKind rir_kind_from_string(const std::string& s);

/// A room impulse response h(t) plus identity metadata.
struct ImpulseResponse {
  Waveform wave;
  std::string rir_id;
  RirKind kind = RirKind::recorded;
};

struct BandT60 {
  double center_hz = 0.0;
  double t60_s = kNan;
};

/// Broadband T60 / DRR estimates for one RIR. t60_s is NaN when the decay
/// fit did not succeed; drr_db may be +-infinity for degenerate splits.
struct AcousticParams {
  double t60_s = kNan;
  double drr_db = kNan;
  std::vector<BandT60> band_t60;
};

}  // namespace reverbforge

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
// Room-impulse-response analysis: early/late decomposition around the
// direct path, direct-to-reverberant ratio, Schroeder energy decay, and
// broadband / octave-band reverberation time estimation.

#ifndef REVERBFORGE_RIR_ANALYSIS_HPP_
#define REVERBFORGE_RIR_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "reverbforge/types.hpp"

namespace reverbforge {

// Half-width of the early-response window around the direct path, seconds.
inline constexpr double kDefaultToleranceWindowS = 0.0025;

// Amplitude decay rate for a given reverberation time: an envelope
// exp(-delta * t) loses 60 dB of energy at t = t60.
inline double decay_rate(double t60_s) { return std::log(1000.0) / t60_s; }

// Decomposition of an RIR into its early response (a window of
// +/- t_0 seconds around the direct path) and late field (everything
// after the window). Both sequences live in the parent's index space;
// samples before the window belong to neither and are zero in both.
struct EarlyLateSplit {
  Eigen::Index t_d = 0;     // direct-path sample index
  double t_0 = kDefaultToleranceWindowS;
  double sample_rate = 0.0;
  Eigen::Index window = 0;  // round(t_0 * sample_rate), samples
  Samples early;
  Samples late;

  Eigen::Index early_begin() const { return std::max<Eigen::Index>(0, t_d - window); }
  Eigen::Index early_end() const {  // inclusive
    return std::min<Eigen::Index>(early.size() - 1, t_d + window);
  }
  Eigen::Index late_begin() const { return t_d + window + 1; }
};

// Decay-fit window on the energy decay curve, in dB below its start.
struct FitRange {
  double high_db = -5.0;
  double low_db = -25.0;
};

// Index of the largest |h(t)|, first occurrence on ties.
// Throws ValidationError on an all-zero input.
Eigen::Index detect_direct_path(SampleRef h);

// Splits h around its direct path. Throws ValidationError when the full
// window (2 * round(t_0 * fs) + 1 samples) does not fit in h. An empty late
// field (direct path near the end) is legal and yields all-zero `late`.
EarlyLateSplit split_early_late(SampleRef h, double sample_rate,
                                double t_0 = kDefaultToleranceWindowS);

// 10 log10(sum early^2 / sum late^2). Zero late energy gives +infinity,
// zero early energy gives -infinity.
double estimate_drr(const EarlyLateSplit& split);

// Schroeder backward-integrated decay in dB: EDC(t) =
// 10 log10(sum_{tau>=t} h^2 / sum h^2). EDC(0) == 0 and the curve is
// non-increasing. Throws ValidationError on all-zero input.
Samples energy_decay_curve(SampleRef h);

// Broadband T60: least-squares line through the late field's energy decay
// curve where it sits inside [fit.high_db, fit.low_db], extrapolated to
// -60 dB (t60 = -60 / slope). The fit deliberately runs on the late field
// alone so that RIRs whose direct path dominates the total energy still
// expose their tail decay to the fit.
//
// Throws InsufficientDecayError when the curve never reaches fit.low_db
// (or only inside the truncation-biased final stretch of the tail), and
// ValidationError for a non-negative fitted slope.
double estimate_t60(SampleRef h, double sample_rate, const FitRange& fit = {},
                    double t_0 = kDefaultToleranceWindowS);

// Per-band T60 via octave band-pass filtering followed by estimate_t60.
// Bands whose decay cannot be fit are omitted from the result rather than
// erroring. Throws ValidationError for an empty center list or a center at
// or above Nyquist.
std::vector<BandT60> octave_band_t60(SampleRef h, double sample_rate,
                                     const std::vector<double>& centers,
                                     const FitRange& fit = {},
                                     double t_0 = kDefaultToleranceWindowS);

struct AnalysisOptions {
  double t_0 = kDefaultToleranceWindowS;
  FitRange fit;
  bool with_bands = true;  // octave-band T60s at default_octave_centers
};

// Full per-RIR report: broadband T60 (NaN when the fit fails), DRR, and
// optional per-band T60s.
AcousticParams analyze_rir(const ImpulseResponse& ir,
                           const AnalysisOptions& options = {});

// One row of the `analyze` CSV report.
struct AnalysisReportRow {
  std::string rir_id;
  RirKind kind = RirKind::recorded;
  Eigen::Index t_d_samples = 0;
  AcousticParams params;
};

// Writes rows as CSV with header
//   rir_id,kind,t_d_samples,t60_s,drr_db,t60_125hz,...,t60_4000hz
// Band columns are fixed to the default 16 kHz octave centers; absent
// estimates are empty fields.
void write_analysis_report(const std::filesystem::path& path,
                           const std::vector<AnalysisReportRow>& rows);

}  // namespace reverbforge

#endif  // REVERBFORGE_RIR_ANALYSIS_HPP_

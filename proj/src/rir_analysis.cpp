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

#include "reverbforge/rir_analysis.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "reverbforge/errors.hpp"
#include "reverbforge/filters.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {
namespace {

// Fits y = a + b * x by least squares and returns the slope b.
double fit_slope(SampleRef x, SampleRef y) {
  const double n = static_cast<double>(x.size());
  const double mx = x.mean();
  const double my = y.mean();
  const double sxx = ((x - mx) * (x - mx)).sum();
  const double sxy = ((x - mx) * (y - my)).sum();
  if (sxx <= 0.0 || n < 2.0) {
    throw ValidationError("degenerate decay-fit region");
  }
  return sxy / sxx;
}

}  // namespace

Eigen::Index detect_direct_path(SampleRef h) {
  if (h.size() == 0) throw ValidationError("empty impulse response");
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    const double a = std::abs(h[i]);
    if (a > best_abs) {  // strict: keeps the first occurrence on ties
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) throw ValidationError("all-zero impulse response");
  return best;
}

EarlyLateSplit split_early_late(SampleRef h, double sample_rate, double t_0) {
  if (!(t_0 > 0.0)) throw ValidationError("tolerance window must be positive");
  if (!(sample_rate > 0.0)) {
    throw ValidationError("sample rate must be positive");
  }
  const auto w = static_cast<Eigen::Index>(std::lround(t_0 * sample_rate));
  if (2 * w + 1 > h.size()) {
    throw ValidationError("tolerance window longer than the impulse response");
  }

  EarlyLateSplit split;
  split.t_d = detect_direct_path(h);
  split.t_0 = t_0;
  split.sample_rate = sample_rate;
  split.window = w;
  split.early = Samples::Zero(h.size());
  split.late = Samples::Zero(h.size());

  const Eigen::Index e_begin = std::max<Eigen::Index>(0, split.t_d - w);
  const Eigen::Index e_end = std::min<Eigen::Index>(h.size() - 1, split.t_d + w);
  split.early.segment(e_begin, e_end - e_begin + 1) =
      h.segment(e_begin, e_end - e_begin + 1);
  const Eigen::Index l_begin = split.t_d + w + 1;
  if (l_begin < h.size()) {
    split.late.segment(l_begin, h.size() - l_begin) =
        h.segment(l_begin, h.size() - l_begin);
  }
  return split;
}

double estimate_drr(const EarlyLateSplit& split) {
  const double early_energy = split.early.square().sum();
  const double late_energy = split.late.square().sum();
  if (late_energy == 0.0) return std::numeric_limits<double>::infinity();
  if (early_energy == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(early_energy / late_energy);
}

Samples energy_decay_curve(SampleRef h) {
  if (h.size() == 0) throw ValidationError("empty input to energy decay");
  Samples tail_energy(h.size());
  double acc = 0.0;
  for (Eigen::Index i = h.size() - 1; i >= 0; --i) {
    acc += h[i] * h[i];
    tail_energy[i] = acc;
  }
  if (acc <= 0.0) throw ValidationError("all-zero input to energy decay");
  // Trailing zero samples give log10(0) = -inf, which is a legal dB value
  // for a fully decayed curve.
  return 10.0 * (tail_energy / acc).log10();
}

double estimate_t60(SampleRef h, double sample_rate, const FitRange& fit,
                    double t_0) {
  if (!(fit.high_db > fit.low_db)) {
    throw ValidationError("fit range must satisfy high_db > low_db");
  }
  const EarlyLateSplit split = split_early_late(h, sample_rate, t_0);
  const Eigen::Index l_begin = split.late_begin();
  const Eigen::Index n_late = h.size() - l_begin;
  if (n_late <= 0 || split.late.square().sum() == 0.0) {
    throw InsufficientDecayError("no late field to fit");
  }

  const Samples edc = energy_decay_curve(split.late.tail(n_late));

  Eigen::Index i_high = -1, i_low = -1;
  for (Eigen::Index i = 0; i < edc.size(); ++i) {
    if (i_high < 0 && edc[i] <= fit.high_db) i_high = i;
    if (edc[i] <= fit.low_db) {
      i_low = i;
      break;
    }
  }
  if (i_low < 0) {
    throw InsufficientDecayError("decay never reaches the lower fit bound");
  }
  // Backward integration always plunges at the very end of the sequence
  // (there is nothing left to integrate), so a crossing confined to the
  // final stretch is truncation, not decay.
  if (i_low >= static_cast<Eigen::Index>(0.95 * static_cast<double>(n_late))) {
    throw InsufficientDecayError(
        "lower fit bound only reached at the truncated tail end");
  }
  if (i_high < 0) i_high = 0;
  if (i_low - i_high + 1 < 5) {
    throw InsufficientDecayError("decay-fit region shorter than 5 samples");
  }

  const Eigen::Index len = i_low - i_high + 1;
  const Samples t = Samples::LinSpaced(len, static_cast<double>(i_high),
                                       static_cast<double>(i_low)) /
                    sample_rate;
  const double slope = fit_slope(t, edc.segment(i_high, len));
  if (slope >= 0.0) {
    throw ValidationError("non-negative decay slope");
  }
  return -60.0 / slope;
}

std::vector<BandT60> octave_band_t60(SampleRef h, double sample_rate,
                                     const std::vector<double>& centers,
                                     const FitRange& fit, double t_0) {
  if (centers.empty()) throw ValidationError("empty band-center list");
  for (const double c : centers) {
    if (!(c > 0.0) || !(c < sample_rate / 2.0)) {
      throw ValidationError("band center must lie in (0, Nyquist)");
    }
  }

  std::vector<BandT60> bands;
  bands.reserve(centers.size());
  for (const double c : centers) {
    const Samples filtered = octave_bandpass(h, c, sample_rate);
    try {
      bands.push_back({c, estimate_t60(filtered, sample_rate, fit, t_0)});
    } catch (const ValidationError&) {
      // Insufficient decay (or a degenerate fit) in one band is reported by
      // omission, not by failing the whole analysis.
    }
  }
  return bands;
}

AcousticParams analyze_rir(const ImpulseResponse& ir,
                           const AnalysisOptions& options) {
  const SampleRef h = ir.wave.samples;
  const double fs = ir.wave.sample_rate;

  AcousticParams params;
  const EarlyLateSplit split = split_early_late(h, fs, options.t_0);
  params.drr_db = estimate_drr(split);
  try {
    params.t60_s = estimate_t60(h, fs, options.fit, options.t_0);
  } catch (const ValidationError&) {
    params.t60_s = kNan;
  }
  if (options.with_bands) {
    params.band_t60 =
        octave_band_t60(h, fs, default_octave_centers(fs), options.fit,
                        options.t_0);
  }
  return params;
}

void write_analysis_report(const std::filesystem::path& path,
                           const std::vector<AnalysisReportRow>& rows) {
  // Fixed band columns: the default octave ladder at 16 kHz. Files at other
  // rates fill the columns they have and leave the rest empty.
  const std::vector<double> report_centers = {125.0,  250.0,  500.0,
                                              1000.0, 2000.0, 4000.0};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());

  out << "rir_id,kind,t_d_samples,t60_s,drr_db";
  for (const double c : report_centers) {
    out << ",t60_" << static_cast<long>(c) << "hz";
  }
  out << "\n";

  for (const AnalysisReportRow& row : rows) {
    require_csv_safe(row.rir_id, "rir_id");
    out << row.rir_id << ',' << to_string(row.kind) << ',' << row.t_d_samples
        << ',' << format_double(row.params.t60_s) << ','
        << format_double(row.params.drr_db);
    for (const double c : report_centers) {
      double band = kNan;
      for (const BandT60& b : row.params.band_t60) {
        if (b.center_hz == c) {
          band = b.t60_s;
          break;
        }
      }
      out << ',' << format_double(band);
    }
    out << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

}  // namespace reverbforge

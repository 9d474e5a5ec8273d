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
// Detector-score analytics: EER, FAR at a threshold, pooled and
// per-condition EER, and the T60 x DRR false-acceptance grid.

#ifndef REVERBFORGE_METRICS_HPP_
#define REVERBFORGE_METRICS_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reverbforge/manifest.hpp"

namespace reverbforge {

struct ScoreEntry {
  std::string utt_id;
  double score = 0.0;  // convention: higher = more bonafide-like
  TrialLabel label = TrialLabel::bonafide;
  std::string condition;
};

struct ScoreSet {
  std::vector<ScoreEntry> entries;
};

// Plain-text score file: two whitespace-separated columns
// `utt_id score`, one row per trial. Blank lines are skipped.
std::vector<std::pair<std::string, double>> read_score_file(
    const std::filesystem::path& path);

// Joins scores to the key manifest. Both directions must cover: a scored
// utt_id missing from the key and a key row missing a score are hard
// errors, as are duplicate score lines.
ScoreSet join_scores(const std::vector<std::pair<std::string, double>>& scores,
                     const TrialManifest& key);

struct EerResult {
  double eer_percent = 0.0;
  double threshold = 0.0;
  long n_bonafide = 0;
  long n_spoof = 0;
};

// Sweeps every distinct score as a threshold with FAR(t) = fraction of
// spoof scores >= t and FRR(t) = fraction of bonafide scores < t; returns
// the midpoint (FAR + FRR) / 2 at the threshold minimizing |FAR - FRR|,
// ties broken toward the smaller threshold.
EerResult compute_eer(const ScoreSet& scores);

struct FarPoint {
  double far_percent = 0.0;
  long count = 0;
};

// FAR over the spoof trials passing `filter` (all spoof trials when
// absent). Returns nullopt when no spoof trial passes the filter.
std::optional<FarPoint> far_at(
    const ScoreSet& scores, double threshold,
    const std::function<bool(const ScoreEntry&)>& filter = {});

struct FarCell {
  double t60_lo = 0.0, t60_hi = 0.0;
  double drr_lo = 0.0, drr_hi = 0.0;
  double far_percent = kNan;  // NaN for an empty cell
  long count = 0;
};

struct FarGrid {
  std::vector<double> t60_edges;
  std::vector<double> drr_edges;
  std::vector<FarCell> cells;  // row-major: t60 bins outer, drr bins inner
};

// Bins each spoof trial carrying RIR metadata by its RIR's T60 and DRR
// (uniform bins over [0.02, 2.0] s x [-10, 30] dB, out-of-range values
// clamped to the edge bins) and computes FAR per cell at `threshold`. Spoof
// trials without metadata are outside the grid; if none carry metadata this
// is an error.
FarGrid far_grid(const ScoreSet& scores, const TrialManifest& manifest,
                 double threshold, int t60_bins = 8, int drr_bins = 8);

struct PooledEer {
  EerResult pooled;
  std::vector<std::pair<std::string, EerResult>> per_condition;
};

// Pooled EER over all entries plus compute_eer per condition label.
// An empty condition label is an error.
PooledEer pooled_eer(const ScoreSet& scores);

// far_grid.csv: t60_lo,t60_hi,drr_lo,drr_hi,far,count with empty `far`
// fields for empty cells. Directly plottable as a heat map.
void write_far_grid_csv(const std::filesystem::path& path,
                        const FarGrid& grid);

}  // namespace reverbforge

#endif  // REVERBFORGE_METRICS_HPP_

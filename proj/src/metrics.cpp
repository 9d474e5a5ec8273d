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

#include "reverbforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "reverbforge/errors.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {

std::vector<std::pair<std::string, double>> read_score_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score file: " + path.string());

  std::vector<std::pair<std::string, double>> scores;
  std::unordered_set<std::string> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream row{line};
    std::string utt_id, score_text, extra;
    if (!(row >> utt_id >> score_text) || (row >> extra)) {
      throw ValidationError("score line " + std::to_string(line_no) +
                            " is not 'utt_id score': " + path.string());
    }
    if (!seen.insert(utt_id).second) {
      throw ValidationError("duplicate score for utt_id: " + utt_id);
    }
    scores.emplace_back(utt_id, parse_double(score_text, "score"));
  }
  return scores;
}

ScoreSet join_scores(const std::vector<std::pair<std::string, double>>& scores,
                     const TrialManifest& key) {
  key.validate_unique_ids();
  std::unordered_map<std::string, const ManifestRow*> rows;
  for (const ManifestRow& row : key.rows) rows.emplace(row.utt_id, &row);

  ScoreSet set;
  std::unordered_set<std::string> scored;
  for (const auto& [utt_id, score] : scores) {
    const auto it = rows.find(utt_id);
    if (it == rows.end()) {
      throw ValidationError("scored utt_id not in key: " + utt_id);
    }
    if (!scored.insert(utt_id).second) {
      throw ValidationError("duplicate score line for utt_id: " + utt_id);
    }
    set.entries.push_back(
        {utt_id, score, it->second->label, it->second->condition});
  }
  for (const ManifestRow& row : key.rows) {
    if (!scored.count(row.utt_id)) {
      throw ValidationError("key row has no score: " + row.utt_id);
    }
  }
  return set;
}

EerResult compute_eer(const ScoreSet& scores) {
  std::vector<double> bonafide, spoof;
  for (const ScoreEntry& e : scores.entries) {
    (e.label == TrialLabel::bonafide ? bonafide : spoof).push_back(e.score);
  }
  if (bonafide.empty() || spoof.empty()) {
    throw ValidationError(
        "EER requires at least one bonafide and one spoof trial");
  }
  std::sort(bonafide.begin(), bonafide.end());
  std::sort(spoof.begin(), spoof.end());

  std::vector<double> thresholds;
  thresholds.reserve(bonafide.size() + spoof.size());
  thresholds.insert(thresholds.end(), bonafide.begin(), bonafide.end());
  thresholds.insert(thresholds.end(), spoof.begin(), spoof.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  EerResult result;
  result.n_bonafide = static_cast<long>(bonafide.size());
  result.n_spoof = static_cast<long>(spoof.size());
  double best_gap = std::numeric_limits<double>::infinity();
  for (const double theta : thresholds) {  // ascending: first win = smallest
    const auto spoof_below = static_cast<double>(
        std::lower_bound(spoof.begin(), spoof.end(), theta) - spoof.begin());
    const auto bona_below = static_cast<double>(
        std::lower_bound(bonafide.begin(), bonafide.end(), theta) -
        bonafide.begin());
    const double far = (static_cast<double>(spoof.size()) - spoof_below) /
                       static_cast<double>(spoof.size());
    const double frr = bona_below / static_cast<double>(bonafide.size());
    const double gap = std::abs(far - frr);
    if (gap < best_gap) {
      best_gap = gap;
      result.threshold = theta;
      result.eer_percent = 100.0 * (far + frr) / 2.0;
    }
  }
  return result;
}

std::optional<FarPoint> far_at(
    const ScoreSet& scores, double threshold,
    const std::function<bool(const ScoreEntry&)>& filter) {
  long count = 0, accepted = 0;
  for (const ScoreEntry& e : scores.entries) {
    if (e.label != TrialLabel::spoof) continue;
    if (filter && !filter(e)) continue;
    ++count;
    if (e.score >= threshold) ++accepted;
  }
  if (count == 0) return std::nullopt;
  return FarPoint{100.0 * static_cast<double>(accepted) /
                      static_cast<double>(count),
                  count};
}

FarGrid far_grid(const ScoreSet& scores, const TrialManifest& manifest,
                 double threshold, int t60_bins, int drr_bins) {
  if (t60_bins < 1 || drr_bins < 1) {
    throw ValidationError("grid needs at least one bin per axis");
  }
  constexpr double kT60Lo = 0.02, kT60Hi = 2.0;
  constexpr double kDrrLo = -10.0, kDrrHi = 30.0;

  std::unordered_map<std::string, const ManifestRow*> rows;
  for (const ManifestRow& row : manifest.rows) rows.emplace(row.utt_id, &row);

  const auto bin_of = [](double v, double lo, double hi, int bins) {
    const double w = (hi - lo) / bins;
    const auto b = static_cast<long>(std::floor((v - lo) / w));
    return static_cast<int>(std::clamp<long>(b, 0, bins - 1));
  };

  FarGrid grid;
  for (int i = 0; i <= t60_bins; ++i) {
    grid.t60_edges.push_back(kT60Lo + i * (kT60Hi - kT60Lo) / t60_bins);
  }
  for (int j = 0; j <= drr_bins; ++j) {
    grid.drr_edges.push_back(kDrrLo + j * (kDrrHi - kDrrLo) / drr_bins);
  }

  std::vector<long> count(
      static_cast<std::size_t>(t60_bins) * drr_bins, 0);
  std::vector<long> accepted(count.size(), 0);
  long eligible = 0;
  for (const ScoreEntry& e : scores.entries) {
    if (e.label != TrialLabel::spoof) continue;
    const auto it = rows.find(e.utt_id);
    if (it == rows.end()) {
      throw ValidationError("scored utt_id not in manifest: " + e.utt_id);
    }
    const ManifestRow& row = *it->second;
    if (row.rir_id.empty() || std::isnan(row.rir_t60) ||
        std::isnan(row.rir_drr)) {
      continue;  // no RIR metadata: outside the grid
    }
    ++eligible;
    const int bi = bin_of(row.rir_t60, kT60Lo, kT60Hi, t60_bins);
    const int bj = bin_of(row.rir_drr, kDrrLo, kDrrHi, drr_bins);
    const auto cell = static_cast<std::size_t>(bi) * drr_bins + bj;
    ++count[cell];
    if (e.score >= threshold) ++accepted[cell];
  }
  if (eligible == 0) {
    throw ValidationError("no spoof trial carries RIR metadata");
  }

  for (int i = 0; i < t60_bins; ++i) {
    for (int j = 0; j < drr_bins; ++j) {
      const auto cell = static_cast<std::size_t>(i) * drr_bins + j;
      FarCell out;
      out.t60_lo = grid.t60_edges[static_cast<std::size_t>(i)];
      out.t60_hi = grid.t60_edges[static_cast<std::size_t>(i) + 1];
      out.drr_lo = grid.drr_edges[static_cast<std::size_t>(j)];
      out.drr_hi = grid.drr_edges[static_cast<std::size_t>(j) + 1];
      out.count = count[cell];
      if (count[cell] > 0) {
        out.far_percent = 100.0 * static_cast<double>(accepted[cell]) /
                          static_cast<double>(count[cell]);
      }
      grid.cells.push_back(out);
    }
  }
  return grid;
}

PooledEer pooled_eer(const ScoreSet& scores) {
  std::map<std::string, ScoreSet> by_condition;
  for (const ScoreEntry& e : scores.entries) {
    if (e.condition.empty()) {
      throw ValidationError("entry with empty condition label: " + e.utt_id);
    }
    by_condition[e.condition].entries.push_back(e);
  }

  PooledEer result;
  result.pooled = compute_eer(scores);
  for (const auto& [condition, subset] : by_condition) {
    result.per_condition.emplace_back(condition, compute_eer(subset));
  }
  return result;
}

void write_far_grid_csv(const std::filesystem::path& path,
                        const FarGrid& grid) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "t60_lo,t60_hi,drr_lo,drr_hi,far,count\n";
  for (const FarCell& cell : grid.cells) {
    out << format_double(cell.t60_lo) << ',' << format_double(cell.t60_hi)
        << ',' << format_double(cell.drr_lo) << ','
        << format_double(cell.drr_hi) << ',' << format_double(cell.far_percent)
        << ',' << cell.count << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

}  // namespace reverbforge

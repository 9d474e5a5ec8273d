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
// Dataset pipeline: RIR inventory loading and partitioning, reverberant
// evaluation-set builds (spoof rows only), and the deterministic online
// augmentation stream.

#ifndef REVERBFORGE_DATASET_PIPELINE_HPP_
#define REVERBFORGE_DATASET_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reverbforge/manifest.hpp"
#include "reverbforge/reverb_engine.hpp"
#include "reverbforge/rir_analysis.hpp"
#include "reverbforge/types.hpp"

namespace reverbforge {

struct InventoryEntry {
  ImpulseResponse ir;
  AcousticParams params;  // broadband analysis; t60_s is NaN if the fit failed
};

struct RirInventory {
  std::vector<InventoryEntry> entries;  // sorted by rir_id

  std::vector<std::string> ids() const;
  const InventoryEntry& by_id(const std::string& rir_id) const;
};

// Reads and analyzes every *.wav under `dir` (non-recursive), sorted by
// file stem. When `only_ids` is given, other files are skipped. Band
// analysis is skipped here; the pipeline only needs broadband T60/DRR.
RirInventory load_inventory(
    const std::filesystem::path& dir,
    const std::optional<std::vector<std::string>>& only_ids = std::nullopt,
    const AnalysisOptions& options = {.with_bands = false}, int workers = 1);

struct InventoryPartition {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::pair<std::string, std::string>> excluded;  // (id, reason)
};

// Exclusion reasons used by filter_and_partition.
inline constexpr const char* kReasonT60ExceedsMax = "t60-exceeds-max";
inline constexpr const char* kReasonDrrOutOfRange = "drr-out-of-range";
inline constexpr const char* kReasonEstimationFailed = "estimation-failed";

// Drops RIRs whose estimated T60 exceeds t60_max or whose DRR leaves
// drr_range (estimation failures are excluded with their own reason), then
// draws n_test survivors uniformly without replacement as the test set.
InventoryPartition filter_and_partition(const RirInventory& inventory,
                                        double t60_max,
                                        std::pair<double, double> drr_range,
                                        int n_test, std::uint64_t seed);

// partition artifacts: train.txt / test.txt (one id per line) and
// excluded.csv (rir_id,reason).
void write_partition(const std::filesystem::path& dir,
                     const InventoryPartition& partition);
std::vector<std::string> read_id_list(const std::filesystem::path& path);

using ProgressFn = std::function<void(long done, long total)>;

// Builds a reverberant evaluation condition from a source manifest: every
// spoof row is convolved (full-tail policy) with a uniformly drawn
// inventory RIR and finalized at `scale`; bonafide rows are copied through
// byte-identically. Returns the output manifest (also written to
// out_dir/manifest.csv). Per-row randomness is keyed by (seed, utt_id).
TrialManifest build_reverb_eval(const TrialManifest& source,
                                const RirInventory& inventory,
                                std::uint64_t seed,
                                const std::filesystem::path& out_dir,
                                const std::string& condition_name,
                                double scale = 1.0, int workers = 1,
                                const ProgressFn& progress = {});

// The per-row augmentation decision: Bernoulli(p_apply), then an RIR and a
// scale draw from the same substream. Keyed by hash(seed, epoch, utt_id) so
// any iteration order or worker count reproduces the same stream.
std::optional<ReverbRecipe> augment_plan(std::uint64_t seed, int epoch,
                                         const std::string& utt_id,
                                         double p_apply,
                                         const std::vector<std::string>& ids,
                                         double scale_min = 0.4,
                                         double scale_max = 1.0);

struct AugmentationItem {
  std::string utt_id;
  Waveform wave;
  std::optional<ReverbRecipe> recipe;  // nullopt: passed through clean
};

// Deterministic, restartable augmentation stream over a training manifest.
// Reverberated items use convolve + finalize with the trim-to-input policy
// so every output matches its source length.
class AugmentationStream {
 public:
  AugmentationStream(const TrialManifest& manifest,
                     const RirInventory& inventory, double p_apply,
                     std::uint64_t seed, int epoch);

  // Items arrive in manifest order; nullopt past the end.
  std::optional<AugmentationItem> next();
  void reset(int epoch);

  // Pure per-row work; safe to call concurrently for distinct rows.
  AugmentationItem item_for_row(const ManifestRow& row) const;

 private:
  const TrialManifest& manifest_;
  const RirInventory& inventory_;
  std::vector<std::string> ids_;
  double p_apply_;
  std::uint64_t seed_;
  int epoch_;
  std::size_t cursor_ = 0;
};

// Materializes one epoch of the stream as WAV files plus a manifest
// (out_dir/manifest.csv) whose rows carry the applied recipes.
TrialManifest export_augmented_epoch(const TrialManifest& train,
                                     const RirInventory& inventory,
                                     double p_apply, std::uint64_t seed,
                                     int epoch,
                                     const std::filesystem::path& out_dir,
                                     int workers = 1,
                                     const ProgressFn& progress = {});

}  // namespace reverbforge

#endif  // REVERBFORGE_DATASET_PIPELINE_HPP_

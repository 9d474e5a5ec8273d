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

#include "reverbforge/dataset_pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <unordered_set>

#include "reverbforge/errors.hpp"
#include "reverbforge/parallel.hpp"
#include "reverbforge/rng.hpp"
#include "reverbforge/text.hpp"
#include "reverbforge/wave_io.hpp"

namespace reverbforge {

std::vector<std::string> RirInventory::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const InventoryEntry& e : entries) out.push_back(e.ir.rir_id);
  return out;
}

const InventoryEntry& RirInventory::by_id(const std::string& rir_id) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), rir_id,
      [](const InventoryEntry& e, const std::string& id) {
        return e.ir.rir_id < id;
      });
  if (it == entries.end() || it->ir.rir_id != rir_id) {
    throw ValidationError("rir_id not in inventory: " + rir_id);
  }
  return *it;
}

RirInventory load_inventory(
    const std::filesystem::path& dir,
    const std::optional<std::vector<std::string>>& only_ids,
    const AnalysisOptions& options, int workers) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::optional<std::unordered_set<std::string>> wanted;
  if (only_ids) wanted.emplace(only_ids->begin(), only_ids->end());

  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav") {
      continue;
    }
    if (wanted && !wanted->count(entry.path().stem().string())) continue;
    paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());

  if (wanted && paths.size() != wanted->size()) {
    throw ValidationError("id list names " + std::to_string(wanted->size()) +
                          " RIRs but " + std::to_string(paths.size()) +
                          " were found in " + dir.string());
  }

  RirInventory inventory;
  inventory.entries.resize(paths.size());
  parallel_for(static_cast<long>(paths.size()), workers, [&](long i) {
    const auto& path = paths[static_cast<std::size_t>(i)];
    InventoryEntry entry;
    entry.ir.wave = read_wave(path);
    entry.ir.rir_id = path.stem().string();
    entry.ir.kind = RirKind::recorded;
    try {
      entry.params = analyze_rir(entry.ir, options);
    } catch (const ValidationError&) {
      // Unanalyzable RIR (no direct path, too short): keep it loadable and
      // let filter_and_partition exclude it with a reason.
      entry.params.t60_s = kNan;
      entry.params.drr_db = kNan;
    }
    inventory.entries[static_cast<std::size_t>(i)] = std::move(entry);
  });
  return inventory;
}

InventoryPartition filter_and_partition(const RirInventory& inventory,
                                        double t60_max,
                                        std::pair<double, double> drr_range,
                                        int n_test, std::uint64_t seed) {
  if (n_test < 0) throw ValidationError("n_test must be non-negative");

  InventoryPartition partition;
  std::vector<std::string> survivors;
  for (const InventoryEntry& e : inventory.entries) {
    if (std::isnan(e.params.t60_s) || std::isnan(e.params.drr_db)) {
      partition.excluded.emplace_back(e.ir.rir_id, kReasonEstimationFailed);
    } else if (e.params.t60_s > t60_max) {
      partition.excluded.emplace_back(e.ir.rir_id, kReasonT60ExceedsMax);
    } else if (e.params.drr_db < drr_range.first ||
               e.params.drr_db > drr_range.second) {
      partition.excluded.emplace_back(e.ir.rir_id, kReasonDrrOutOfRange);
    } else {
      survivors.push_back(e.ir.rir_id);
    }
  }
  if (n_test >= static_cast<int>(survivors.size()) && n_test > 0) {
    throw ValidationError("n_test (" + std::to_string(n_test) +
                          ") must be smaller than the surviving count (" +
                          std::to_string(survivors.size()) + ")");
  }

  // Partial Fisher-Yates: the first n_test slots become the test draw.
  Rng rng(substream_key(seed, "partition", "test-draw"));
  for (int i = 0; i < n_test; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   rng.uniform_index(survivors.size() - i);
    std::swap(survivors[static_cast<std::size_t>(i)], survivors[j]);
  }
  partition.test.assign(survivors.begin(), survivors.begin() + n_test);
  partition.train.assign(survivors.begin() + n_test, survivors.end());
  std::sort(partition.test.begin(), partition.test.end());
  std::sort(partition.train.begin(), partition.train.end());
  return partition;
}

void write_partition(const std::filesystem::path& dir,
                     const InventoryPartition& partition) {
  std::filesystem::create_directories(dir);
  const auto write_list = [&](const char* name,
                              const std::vector<std::string>& ids) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + (dir / name).string());
    for (const std::string& id : ids) out << id << "\n";
    out.flush();
    if (!out) throw IoError("write failure on: " + (dir / name).string());
  };
  write_list("train.txt", partition.train);
  write_list("test.txt", partition.test);

  std::ofstream out(dir / "excluded.csv", std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: excluded.csv");
  out << "rir_id,reason\n";
  for (const auto& [id, reason] : partition.excluded) {
    require_csv_safe(id, "rir_id");
    out << id << ',' << reason << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: excluded.csv");
}

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id list: " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    const auto id = std::string(trim(line));
    if (!id.empty()) ids.push_back(id);
  }
  return ids;
}

TrialManifest build_reverb_eval(const TrialManifest& source,
                                const RirInventory& inventory,
                                std::uint64_t seed,
                                const std::filesystem::path& out_dir,
                                const std::string& condition_name,
                                double scale, int workers,
                                const ProgressFn& progress) {
  source.validate_unique_ids();
  const std::vector<std::string> ids = inventory.ids();
  const bool any_spoof =
      std::any_of(source.rows.begin(), source.rows.end(),
                  [](const ManifestRow& r) { return r.label == TrialLabel::spoof; });
  if (any_spoof && ids.empty()) {
    throw ValidationError("empty RIR inventory for a manifest with spoof rows");
  }
  std::filesystem::create_directories(out_dir);

  TrialManifest out;
  out.base_dir = out_dir;
  out.rows.resize(source.rows.size());
  std::atomic<long> done{0};
  std::mutex progress_mutex;

  parallel_for(static_cast<long>(source.rows.size()), workers, [&](long i) {
    const ManifestRow& src = source.rows[static_cast<std::size_t>(i)];
    ManifestRow row;
    row.utt_id = src.utt_id;
    row.path = src.utt_id + ".wav";
    row.label = src.label;
    row.condition = condition_name;

    const std::filesystem::path dst = out_dir / row.path;
    if (src.label == TrialLabel::bonafide) {
      // Bonafide audio passes through byte-identically.
      try {
        std::filesystem::copy_file(
            source.resolve_path(src), dst,
            std::filesystem::copy_options::overwrite_existing);
      } catch (const std::filesystem::filesystem_error& e) {
        throw IoError(std::string("copy failed: ") + e.what());
      }
    } else {
      const Waveform speech = read_wave(source.resolve_path(src));
      Rng rng(substream_key(seed, "build-eval", src.utt_id));
      const InventoryEntry& entry =
          inventory.by_id(ids[rng.uniform_index(ids.size())]);
      const FinalizeResult fin = finalize(convolve(speech, entry.ir), scale);
      write_wave(fin.wave, dst, BitDepth::pcm16);
      row.rir_id = entry.ir.rir_id;
      row.rir_t60 = entry.params.t60_s;
      row.rir_drr = entry.params.drr_db;
      row.scale = scale;
    }
    out.rows[static_cast<std::size_t>(i)] = std::move(row);

    const long d = done.fetch_add(1, std::memory_order_relaxed) + 1;
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(d, static_cast<long>(source.rows.size()));
    }
  });

  out.write_csv(out_dir / "manifest.csv");
  return out;
}

std::optional<ReverbRecipe> augment_plan(std::uint64_t seed, int epoch,
                                         const std::string& utt_id,
                                         double p_apply,
                                         const std::vector<std::string>& ids,
                                         double scale_min, double scale_max) {
  if (!(p_apply >= 0.0 && p_apply <= 1.0)) {
    throw ValidationError("p_apply must lie in [0, 1]");
  }
  if (ids.empty() && p_apply > 0.0) {
    throw ValidationError("empty RIR inventory with p_apply > 0");
  }
  const std::uint64_t key =
      substream_key(seed, "augment", utt_id, static_cast<std::uint64_t>(epoch));
  Rng rng(key);
  if (rng.uniform() >= p_apply) return std::nullopt;
  return draw_recipe(rng, ids, scale_min, scale_max, key);
}

AugmentationStream::AugmentationStream(const TrialManifest& manifest,
                                       const RirInventory& inventory,
                                       double p_apply, std::uint64_t seed,
                                       int epoch)
    : manifest_(manifest),
      inventory_(inventory),
      ids_(inventory.ids()),
      p_apply_(p_apply),
      seed_(seed),
      epoch_(epoch) {
  if (!(p_apply >= 0.0 && p_apply <= 1.0)) {
    throw ValidationError("p_apply must lie in [0, 1]");
  }
  if (ids_.empty() && p_apply > 0.0) {
    throw ValidationError("empty RIR inventory with p_apply > 0");
  }
  manifest.validate_unique_ids();
}

AugmentationItem AugmentationStream::item_for_row(
    const ManifestRow& row) const {
  AugmentationItem item;
  item.utt_id = row.utt_id;
  const Waveform clean = read_wave(manifest_.resolve_path(row));
  item.recipe = augment_plan(seed_, epoch_, row.utt_id, p_apply_, ids_);
  if (item.recipe) {
    const InventoryEntry& entry = inventory_.by_id(item.recipe->rir_id);
    item.wave = finalize(convolve(clean, entry.ir), item.recipe->scale,
                         clean.samples.size())
                    .wave;
  } else {
    item.wave = clean;
  }
  return item;
}

std::optional<AugmentationItem> AugmentationStream::next() {
  if (cursor_ >= manifest_.rows.size()) return std::nullopt;
  return item_for_row(manifest_.rows[cursor_++]);
}

void AugmentationStream::reset(int epoch) {
  epoch_ = epoch;
  cursor_ = 0;
}

TrialManifest export_augmented_epoch(const TrialManifest& train,
                                     const RirInventory& inventory,
                                     double p_apply, std::uint64_t seed,
                                     int epoch,
                                     const std::filesystem::path& out_dir,
                                     int workers, const ProgressFn& progress) {
  const AugmentationStream stream(train, inventory, p_apply, seed, epoch);
  std::filesystem::create_directories(out_dir);

  TrialManifest out;
  out.base_dir = out_dir;
  out.rows.resize(train.rows.size());
  std::atomic<long> done{0};
  std::mutex progress_mutex;

  parallel_for(static_cast<long>(train.rows.size()), workers, [&](long i) {
    const ManifestRow& src = train.rows[static_cast<std::size_t>(i)];
    const AugmentationItem item = stream.item_for_row(src);

    ManifestRow row;
    row.utt_id = src.utt_id;
    row.path = src.utt_id + ".wav";
    row.label = src.label;
    row.condition = src.condition;
    if (item.recipe) {
      const InventoryEntry& entry = inventory.by_id(item.recipe->rir_id);
      row.rir_id = item.recipe->rir_id;
      row.rir_t60 = entry.params.t60_s;
      row.rir_drr = entry.params.drr_db;
      row.scale = item.recipe->scale;
    }
    write_wave(item.wave, out_dir / row.path, BitDepth::pcm16);
    out.rows[static_cast<std::size_t>(i)] = std::move(row);

    const long d = done.fetch_add(1, std::memory_order_relaxed) + 1;
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(d, static_cast<long>(train.rows.size()));
    }
  });

  out.write_csv(out_dir / "manifest.csv");
  return out;
}

}  // namespace reverbforge

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

// reverbforge: one entry point per pipeline stage.
//
//   analyze      estimate T60 / DRR / band decays for a directory of RIRs
//   partition    filter an RIR inventory by T60/DRR and split train/test
//   synthesize   expand parent RIRs into target-coverage synthetic RIRs
//   simulate     render image-source RIRs for randomly sampled shoebox rooms
//   build-eval   reverberate the spoof half of an evaluation manifest
//   augment      materialize one epoch of the training augmentation stream
//   eval-scores  EER / per-condition EER / T60xDRR FAR grid from a score file
//
// Every run writes run_record.json (tool version, resolved config, input
// checksums) next to its artifacts, and is fully determined by
// (inputs, config, seed): reruns are byte-identical at any --workers value.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error. Errors are a
// single machine-parseable line on stderr: "error: <kind>: <detail>".

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reverbforge/config.hpp"
#include "reverbforge/dataset_pipeline.hpp"
#include "reverbforge/errors.hpp"
#include "reverbforge/manifest.hpp"
#include "reverbforge/metrics.hpp"
#include "reverbforge/parallel.hpp"
#include "reverbforge/rir_analysis.hpp"
#include "reverbforge/rir_synthesis.hpp"
#include "reverbforge/room_simulator.hpp"
#include "reverbforge/run_record.hpp"
#include "reverbforge/text.hpp"
#include "reverbforge/types.hpp"
#include "reverbforge/version.hpp"
#include "reverbforge/wave_io.hpp"

namespace rf = reverbforge;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Flag plumbing

// Raw flag storage. CLI11 writes into these; only flags the user actually
// passed (count > 0) are promoted into ConfigOverrides, so unset flags fall
// through to the config file / environment / defaults.
struct FlagBox {
  std::string config_path;
  std::uint64_t seed = 0;
  int workers = 1;
  double t_0 = 0.0;
  double t60_min = 0.0, t60_max = 0.0;
  double drr_min = 0.0, drr_max = 0.0;
  double p_apply = 0.0;
  double scale_min = 0.0, scale_max = 0.0;
  int t60_bins = 0, drr_bins = 0;
};

void add_common_flags(CLI::App* cmd, FlagBox* box) {
  cmd->add_option("--config", box->config_path,
                  "key = value config file (flags take precedence)");
  cmd->add_option("--seed", box->seed, "master seed (unsigned 64-bit)");
  cmd->add_option("--workers", box->workers, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
}

rf::RunConfig resolve(const CLI::App* cmd, const FlagBox& box) {
  rf::ConfigOverrides flags;
  auto passed = [&](const std::string& name) {
    return cmd->count(name) > 0;
  };
  if (passed("--seed")) flags.seed = box.seed;
  if (cmd->get_option_no_throw("--t0") && passed("--t0")) flags.t_0 = box.t_0;
  if (cmd->get_option_no_throw("--t60-min") && passed("--t60-min"))
    flags.t60_min = box.t60_min;
  if (cmd->get_option_no_throw("--t60-max") && passed("--t60-max"))
    flags.t60_max = box.t60_max;
  if (cmd->get_option_no_throw("--drr-min") && passed("--drr-min"))
    flags.drr_min = box.drr_min;
  if (cmd->get_option_no_throw("--drr-max") && passed("--drr-max"))
    flags.drr_max = box.drr_max;
  if (cmd->get_option_no_throw("--p") && passed("--p"))
    flags.p_apply = box.p_apply;
  if (cmd->get_option_no_throw("--scale-min") && passed("--scale-min"))
    flags.scale_min = box.scale_min;
  if (cmd->get_option_no_throw("--scale-max") && passed("--scale-max"))
    flags.scale_max = box.scale_max;
  if (cmd->get_option_no_throw("--t60-bins") && passed("--t60-bins"))
    flags.t60_bins = box.t60_bins;
  if (cmd->get_option_no_throw("--drr-bins") && passed("--drr-bins"))
    flags.drr_bins = box.drr_bins;

  std::optional<fs::path> file;
  if (!box.config_path.empty()) file = box.config_path;
  return rf::resolve_config(file, flags, std::getenv(rf::kSeedEnvVar));
}

// ---------------------------------------------------------------------------
// Small helpers

// Per-stage progress counter on stderr (never stdout; stdout stays clean
// for summaries). Prints at most ~20 ticks per stage.
rf::ProgressFn progress_printer(const std::string& stage) {
  auto mutex = std::make_shared<std::mutex>();
  return [stage, mutex](long done, long total) {
    const long step = std::max<long>(1, total / 20);
    if (done != total && done % step != 0) return;
    std::lock_guard<std::mutex> lock(*mutex);
    std::fprintf(stderr, "%s: %ld/%ld\n", stage.c_str(), done, total);
  };
}

// Sorted *.wav paths under dir, optionally restricted to (and checked
// against) an id list of file stems.
std::vector<fs::path> list_wavs(
    const fs::path& dir, const std::optional<std::vector<std::string>>& ids) {
  if (!fs::is_directory(dir)) {
    throw rf::IoError("not a directory: " + dir.string());
  }
  std::optional<std::set<std::string>> wanted;
  if (ids) wanted.emplace(ids->begin(), ids->end());
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav") {
      continue;
    }
    if (wanted && !wanted->count(entry.path().stem().string())) continue;
    paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (wanted && paths.size() != wanted->size()) {
    throw rf::ValidationError(
        "id list names " + std::to_string(wanted->size()) + " RIRs but " +
        std::to_string(paths.size()) + " were found in " + dir.string());
  }
  return paths;
}

// File stems follow the pipeline's naming scheme: simulate writes sim<k>,
// synthesize writes <parent>_syn<k>, everything else counts as recorded.
rf::RirKind kind_from_stem(const std::string& stem) {
  if (stem.find("_syn") != std::string::npos) return rf::RirKind::synthetic;
  if (stem.rfind("sim", 0) == 0 && stem.size() > 3 &&
      stem.find_first_not_of("0123456789", 3) == std::string::npos) {
    return rf::RirKind::simulated;
  }
  return rf::RirKind::recorded;
}

std::optional<std::vector<std::string>> read_optional_ids(
    const std::string& path) {
  if (path.empty()) return std::nullopt;
  return rf::read_id_list(path);
}

rf::RunRecord::Input file_input(const std::string& label, const fs::path& p) {
  return {label, p.string(), rf::checksum_file(p)};
}

rf::RunRecord::Input dir_input(const std::string& label, const fs::path& p) {
  return {label, p.string(), rf::checksum_dir(p)};
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns after writing its artifacts plus
// run_record.json; exceptions propagate to main for uniform reporting.

struct AnalyzeArgs {
  std::string rirs, out;
};

void run_analyze(const AnalyzeArgs& args, const rf::RunConfig& config,
                 int workers) {
  const std::vector<fs::path> paths = list_wavs(args.rirs, std::nullopt);
  if (paths.empty()) {
    throw rf::ValidationError("no .wav files in " + args.rirs);
  }

  rf::AnalysisOptions options;
  options.t_0 = config.t_0;
  options.fit = {config.fit_high_db, config.fit_low_db};
  options.with_bands = true;

  std::vector<rf::AnalysisReportRow> rows(paths.size());
  const auto progress = progress_printer("analyze");
  rf::parallel_for(static_cast<long>(paths.size()), workers, [&](long i) {
    const fs::path& path = paths[static_cast<std::size_t>(i)];
    rf::ImpulseResponse ir;
    ir.wave = rf::read_wave(path);
    ir.rir_id = path.stem().string();
    ir.kind = kind_from_stem(ir.rir_id);

    rf::AnalysisReportRow row;
    row.rir_id = ir.rir_id;
    row.kind = ir.kind;
    row.t_d_samples = rf::detect_direct_path(ir.wave.samples);
    row.params = rf::analyze_rir(ir, options);
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  progress(static_cast<long>(paths.size()), static_cast<long>(paths.size()));

  rf::write_analysis_report(args.out, rows);

  rf::RunRecord record;
  record.subcommand = "analyze";
  record.config = config;
  record.params["rirs"] = args.rirs;
  record.params["out"] = args.out;
  record.params["n_rirs"] = std::to_string(paths.size());
  record.inputs.push_back(dir_input("rirs", args.rirs));
  fs::path record_dir = fs::path(args.out).parent_path();
  if (record_dir.empty()) record_dir = ".";
  rf::write_run_record(record, record_dir);

  std::printf("analyze: wrote %zu rows to %s\n", rows.size(),
              args.out.c_str());
}

struct PartitionArgs {
  std::string rirs, out;
  int n_test = 30;
};

void run_partition(const PartitionArgs& args, const rf::RunConfig& config,
                   int workers) {
  rf::AnalysisOptions options;
  options.t_0 = config.t_0;
  options.fit = {config.fit_high_db, config.fit_low_db};
  options.with_bands = false;

  const rf::RirInventory inventory =
      rf::load_inventory(args.rirs, std::nullopt, options, workers);
  const rf::InventoryPartition partition = rf::filter_and_partition(
      inventory, config.t60_max, {config.drr_min, config.drr_max},
      args.n_test, config.seed);
  rf::write_partition(args.out, partition);

  rf::RunRecord record;
  record.subcommand = "partition";
  record.config = config;
  record.params["rirs"] = args.rirs;
  record.params["out"] = args.out;
  record.params["n_test"] = std::to_string(args.n_test);
  record.inputs.push_back(dir_input("rirs", args.rirs));
  rf::write_run_record(record, args.out);

  std::printf("partition: train=%zu test=%zu excluded=%zu\n",
              partition.train.size(), partition.test.size(),
              partition.excluded.size());
}

struct SynthesizeArgs {
  std::string parents, out, ids;
  int n = 500;
  int retry_cap = 1000;
};

void run_synthesize(const SynthesizeArgs& args, const rf::RunConfig& config,
                    int workers) {
  const auto ids = read_optional_ids(args.ids);
  const std::vector<fs::path> paths = list_wavs(args.parents, ids);
  if (paths.empty()) {
    throw rf::ValidationError("no parent RIRs in " + args.parents);
  }

  std::vector<rf::ImpulseResponse> parents(paths.size());
  rf::parallel_for(static_cast<long>(paths.size()), workers, [&](long i) {
    const fs::path& path = paths[static_cast<std::size_t>(i)];
    rf::ImpulseResponse ir;
    ir.wave = rf::read_wave(path);
    ir.rir_id = path.stem().string();
    ir.kind = kind_from_stem(ir.rir_id);
    parents[static_cast<std::size_t>(i)] = std::move(ir);
  });

  rf::ExpandOptions options;
  options.n_per_parent = args.n;
  options.seed = config.seed;
  options.workers = workers;
  options.retry_cap = args.retry_cap;
  options.ranges = {config.t60_min, config.t60_max, config.drr_min,
                    config.drr_max};
  options.analysis.t_0 = config.t_0;
  options.analysis.fit = {config.fit_high_db, config.fit_low_db};

  fs::create_directories(args.out);
  const fs::path out_dir = args.out;
  // Synthetic RIRs are stored as float-32 so the reshaped tail survives
  // re-analysis without quantization bias.
  const auto sink = [&](const rf::ImpulseResponse& ir,
                        const rf::GenerationLogEntry&) {
    rf::write_wave(ir.wave, out_dir / (ir.rir_id + ".wav"),
                   rf::BitDepth::float32);
  };
  const rf::ExpandStats stats =
      rf::expand_inventory(parents, options, sink,
                           progress_printer("synthesize"));

  rf::write_generation_log(out_dir / "generation_log.csv", stats.log);

  rf::RunRecord record;
  record.subcommand = "synthesize";
  record.config = config;
  record.params["parents"] = args.parents;
  record.params["out"] = args.out;
  record.params["n"] = std::to_string(args.n);
  record.params["retry_cap"] = std::to_string(args.retry_cap);
  record.params["n_parents"] = std::to_string(parents.size());
  record.inputs.push_back(dir_input("parents", args.parents));
  if (!args.ids.empty()) record.inputs.push_back(file_input("ids", args.ids));
  rf::write_run_record(record, out_dir);

  std::printf("synthesize: accepted=%ld attempts=%ld failed_parents=%zu\n",
              stats.accepted, stats.attempts, stats.failed_parents.size());
  if (!stats.failed_parents.empty()) {
    for (const std::string& id : stats.failed_parents) {
      std::fprintf(stderr, "synthesize: parent flagged: %s\n", id.c_str());
    }
  }
}

struct SimulateArgs {
  std::string out;
  long count = 1;
  rf::RoomRanges ranges;
};

void run_simulate(const SimulateArgs& args, const rf::RunConfig& config,
                  int workers) {
  const std::vector<rf::RoomSpec> rooms =
      rf::sample_rooms(config.seed, args.count, args.ranges);

  fs::create_directories(args.out);
  const fs::path out_dir = args.out;
  std::vector<rf::RoomReportRow> report(rooms.size());
  const auto progress = progress_printer("simulate");
  std::atomic<long> done{0};
  rf::parallel_for(static_cast<long>(rooms.size()), workers, [&](long i) {
    const std::string rir_id = "sim" + std::to_string(i + 1);
    const rf::ImpulseResponse ir =
        rf::simulate_rir(rooms[static_cast<std::size_t>(i)], rir_id);
    rf::write_wave(ir.wave, out_dir / (rir_id + ".wav"),
                   rf::BitDepth::float32);
    report[static_cast<std::size_t>(i)] = {
        rir_id, rooms[static_cast<std::size_t>(i)]};
    progress(++done, static_cast<long>(rooms.size()));
  });

  rf::write_room_report(out_dir / "rooms.csv", report);

  rf::RunRecord record;
  record.subcommand = "simulate";
  record.config = config;
  record.params["out"] = args.out;
  record.params["count"] = std::to_string(args.count);
  rf::write_run_record(record, out_dir);

  std::printf("simulate: wrote %zu RIRs to %s\n", rooms.size(),
              args.out.c_str());
}

struct BuildEvalArgs {
  std::string manifest, rirs, out, condition, ids;
  double scale = 1.0;
};

void run_build_eval(const BuildEvalArgs& args, const rf::RunConfig& config,
                    int workers) {
  const rf::TrialManifest source = rf::TrialManifest::read_csv(args.manifest);

  rf::AnalysisOptions options;
  options.t_0 = config.t_0;
  options.fit = {config.fit_high_db, config.fit_low_db};
  options.with_bands = false;
  const rf::RirInventory inventory = rf::load_inventory(
      args.rirs, read_optional_ids(args.ids), options, workers);

  const rf::TrialManifest built = rf::build_reverb_eval(
      source, inventory, config.seed, args.out, args.condition, args.scale,
      workers, progress_printer("build-eval"));

  rf::RunRecord record;
  record.subcommand = "build-eval";
  record.config = config;
  record.params["manifest"] = args.manifest;
  record.params["rirs"] = args.rirs;
  record.params["out"] = args.out;
  record.params["condition_name"] = args.condition;
  record.params["scale"] = rf::format_double(args.scale);
  record.inputs.push_back(file_input("manifest", args.manifest));
  record.inputs.push_back(dir_input("rirs", args.rirs));
  if (!args.ids.empty()) record.inputs.push_back(file_input("ids", args.ids));
  rf::write_run_record(record, args.out);

  std::printf("build-eval: wrote %zu trials to %s\n", built.rows.size(),
              args.out.c_str());
}

struct AugmentArgs {
  std::string manifest, rirs, out;
  int epoch = 0;
};

void run_augment(const AugmentArgs& args, const rf::RunConfig& config,
                 int workers) {
  const rf::TrialManifest train = rf::TrialManifest::read_csv(args.manifest);

  rf::AnalysisOptions options;
  options.t_0 = config.t_0;
  options.fit = {config.fit_high_db, config.fit_low_db};
  options.with_bands = false;
  const rf::RirInventory inventory =
      rf::load_inventory(args.rirs, std::nullopt, options, workers);

  const rf::TrialManifest out = rf::export_augmented_epoch(
      train, inventory, config.p_apply, config.seed, args.epoch, args.out,
      workers, progress_printer("augment"));

  long reverberated = 0;
  for (const rf::ManifestRow& row : out.rows) {
    if (!row.rir_id.empty()) ++reverberated;
  }

  rf::RunRecord record;
  record.subcommand = "augment";
  record.config = config;
  record.params["manifest"] = args.manifest;
  record.params["rirs"] = args.rirs;
  record.params["out"] = args.out;
  record.params["epoch"] = std::to_string(args.epoch);
  record.inputs.push_back(file_input("manifest", args.manifest));
  record.inputs.push_back(dir_input("rirs", args.rirs));
  rf::write_run_record(record, args.out);

  std::printf("augment: wrote %zu items (%ld reverberated) to %s\n",
              out.rows.size(), reverberated, args.out.c_str());
}

struct EvalScoresArgs {
  std::string scores, manifest, out;
  bool invert = false;
};

void run_eval_scores(const EvalScoresArgs& args, const rf::RunConfig& config) {
  const rf::TrialManifest key = rf::TrialManifest::read_csv(args.manifest);
  auto raw = rf::read_score_file(args.scores);
  if (args.invert) {
    for (auto& [id, score] : raw) score = -score;
  }
  const rf::ScoreSet scores = rf::join_scores(raw, key);
  const rf::PooledEer result = rf::pooled_eer(scores);

  fs::create_directories(args.out);
  const fs::path out_dir = args.out;

  nlohmann::json doc;
  doc["eer_percent"] = result.pooled.eer_percent;
  doc["threshold"] = result.pooled.threshold;
  doc["n_bonafide"] = result.pooled.n_bonafide;
  doc["n_spoof"] = result.pooled.n_spoof;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& [condition, eer] : result.per_condition) {
    per.push_back({{"condition", condition},
                   {"eer_percent", eer.eer_percent},
                   {"threshold", eer.threshold},
                   {"n_bonafide", eer.n_bonafide},
                   {"n_spoof", eer.n_spoof}});
  }
  doc["per_condition"] = per;
  {
    const fs::path path = out_dir / "metrics.json";
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw rf::IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out.flush()) throw rf::IoError("write failure on: " + path.string());
  }

  // The FAR grid needs spoof trials that went through an RIR; a clean-only
  // evaluation simply has no grid.
  std::unordered_set<std::string> with_metadata;
  for (const rf::ManifestRow& row : key.rows) {
    if (!row.rir_id.empty()) with_metadata.insert(row.utt_id);
  }
  bool any_metadata = false;
  for (const rf::ScoreEntry& entry : scores.entries) {
    if (entry.label == rf::TrialLabel::spoof &&
        with_metadata.count(entry.utt_id)) {
      any_metadata = true;
      break;
    }
  }
  if (any_metadata) {
    const rf::FarGrid grid =
        rf::far_grid(scores, key, result.pooled.threshold, config.t60_bins,
                     config.drr_bins);
    rf::write_far_grid_csv(out_dir / "far_grid.csv", grid);
  } else {
    std::fprintf(stderr,
                 "eval-scores: no spoof trial carries RIR metadata; "
                 "skipping far_grid.csv\n");
  }

  rf::RunRecord record;
  record.subcommand = "eval-scores";
  record.config = config;
  record.params["scores"] = args.scores;
  record.params["manifest"] = args.manifest;
  record.params["out"] = args.out;
  record.params["invert"] = args.invert ? "1" : "0";
  record.inputs.push_back(file_input("scores", args.scores));
  record.inputs.push_back(file_input("manifest", args.manifest));
  rf::write_run_record(record, out_dir);

  std::printf("eval-scores: eer=%.4f%% threshold=%s\n",
              result.pooled.eer_percent,
              rf::format_double(result.pooled.threshold).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reverbforge: RIR analysis, synthesis, simulation, and "
               "reverberant dataset building"};
  app.set_version_flag("--version", rf::kVersionString);
  app.require_subcommand(1);

  // analyze ---------------------------------------------------------------
  auto* analyze = app.add_subcommand(
      "analyze", "estimate T60/DRR/band decays for every RIR in a directory");
  AnalyzeArgs analyze_args;
  FlagBox analyze_box;
  analyze->add_option("--rirs", analyze_args.rirs, "RIR directory")
      ->required();
  analyze->add_option("--out", analyze_args.out, "report CSV path")
      ->required();
  analyze->add_option("--t0", analyze_box.t_0,
                      "early-window half-width in seconds");
  add_common_flags(analyze, &analyze_box);

  // partition ---------------------------------------------------------------
  auto* partition = app.add_subcommand(
      "partition", "filter RIRs by T60/DRR and split train/test");
  PartitionArgs partition_args;
  FlagBox partition_box;
  partition->add_option("--rirs", partition_args.rirs, "RIR directory")
      ->required();
  partition->add_option("--out", partition_args.out, "output directory")
      ->required();
  partition->add_option("--n-test", partition_args.n_test,
                        "held-out test RIR count");
  partition->add_option("--t60-max", partition_box.t60_max,
                        "maximum estimated T60 in seconds");
  partition->add_option("--drr-min", partition_box.drr_min,
                        "minimum estimated DRR in dB");
  partition->add_option("--drr-max", partition_box.drr_max,
                        "maximum estimated DRR in dB");
  partition->add_option("--t0", partition_box.t_0,
                        "early-window half-width in seconds");
  add_common_flags(partition, &partition_box);

  // synthesize --------------------------------------------------------------
  auto* synthesize = app.add_subcommand(
      "synthesize", "expand parent RIRs with uniform T60/DRR targets");
  SynthesizeArgs synthesize_args;
  FlagBox synthesize_box;
  synthesize
      ->add_option("--parents", synthesize_args.parents,
                   "parent RIR directory")
      ->required();
  synthesize->add_option("--out", synthesize_args.out, "output directory")
      ->required();
  synthesize->add_option("--n", synthesize_args.n, "outputs per parent")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--ids", synthesize_args.ids,
                         "id list restricting which parents are used");
  synthesize->add_option("--retry-cap", synthesize_args.retry_cap,
                         "attempts per output before flagging the parent")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--t60-min", synthesize_box.t60_min,
                         "target T60 lower bound, seconds");
  synthesize->add_option("--t60-max", synthesize_box.t60_max,
                         "target T60 upper bound, seconds");
  synthesize->add_option("--drr-min", synthesize_box.drr_min,
                         "target DRR lower bound, dB");
  synthesize->add_option("--drr-max", synthesize_box.drr_max,
                         "target DRR upper bound, dB");
  synthesize->add_option("--t0", synthesize_box.t_0,
                         "early-window half-width in seconds");
  add_common_flags(synthesize, &synthesize_box);

  // simulate ----------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "render image-source RIRs for random shoebox rooms");
  SimulateArgs simulate_args;
  FlagBox simulate_box;
  simulate->add_option("--count", simulate_args.count, "number of rooms")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", simulate_args.out, "output directory")
      ->required();
  simulate->add_option("--lx-min", simulate_args.ranges.lx_min, "room x min");
  simulate->add_option("--lx-max", simulate_args.ranges.lx_max, "room x max");
  simulate->add_option("--ly-min", simulate_args.ranges.ly_min, "room y min");
  simulate->add_option("--ly-max", simulate_args.ranges.ly_max, "room y max");
  simulate->add_option("--lz-min", simulate_args.ranges.lz_min, "room z min");
  simulate->add_option("--lz-max", simulate_args.ranges.lz_max, "room z max");
  simulate->add_option("--beta-min", simulate_args.ranges.beta_min,
                       "wall reflectivity min");
  simulate->add_option("--beta-max", simulate_args.ranges.beta_max,
                       "wall reflectivity max");
  simulate->add_option("--rate", simulate_args.ranges.sample_rate,
                       "output sample rate");
  add_common_flags(simulate, &simulate_box);

  // build-eval ----------------------------------------------------------
  auto* build_eval = app.add_subcommand(
      "build-eval", "reverberate the spoof half of an evaluation manifest");
  BuildEvalArgs build_eval_args;
  FlagBox build_eval_box;
  build_eval
      ->add_option("--manifest", build_eval_args.manifest,
                   "source manifest CSV")
      ->required();
  build_eval->add_option("--rirs", build_eval_args.rirs, "RIR directory")
      ->required();
  build_eval->add_option("--out", build_eval_args.out, "output directory")
      ->required();
  build_eval
      ->add_option("--condition-name", build_eval_args.condition,
                   "condition label for the output manifest")
      ->required();
  build_eval->add_option("--scale", build_eval_args.scale,
                         "fixed amplitude scale (default 1.0)");
  build_eval->add_option("--ids", build_eval_args.ids,
                         "id list restricting which RIRs are drawn");
  add_common_flags(build_eval, &build_eval_box);

  // augment ---------------------------------------------------------------
  auto* augment = app.add_subcommand(
      "augment", "materialize one epoch of the training augmentation stream");
  AugmentArgs augment_args;
  FlagBox augment_box;
  augment
      ->add_option("--manifest", augment_args.manifest,
                   "training manifest CSV")
      ->required();
  augment->add_option("--rirs", augment_args.rirs, "RIR directory")
      ->required();
  augment->add_option("--out", augment_args.out, "output directory")
      ->required();
  augment->add_option("--epoch", augment_args.epoch, "epoch number");
  augment->add_option("--p", augment_box.p_apply,
                      "reverberation probability");
  augment->add_option("--scale-min", augment_box.scale_min,
                      "amplitude scale lower bound");
  augment->add_option("--scale-max", augment_box.scale_max,
                      "amplitude scale upper bound");
  add_common_flags(augment, &augment_box);

  // eval-scores -----------------------------------------------------------
  auto* eval_scores = app.add_subcommand(
      "eval-scores", "EER and FAR-grid analytics for a detector score file");
  EvalScoresArgs eval_scores_args;
  FlagBox eval_scores_box;
  eval_scores
      ->add_option("--scores", eval_scores_args.scores,
                   "score file (utt_id score)")
      ->required();
  eval_scores
      ->add_option("--manifest", eval_scores_args.manifest,
                   "key manifest CSV")
      ->required();
  eval_scores->add_option("--out", eval_scores_args.out, "output directory")
      ->required();
  eval_scores->add_flag("--invert", eval_scores_args.invert,
                        "negate scores (for higher = more spoof-like files)");
  eval_scores->add_option("--t60-bins", eval_scores_box.t60_bins,
                          "FAR-grid T60 bin count");
  eval_scores->add_option("--drr-bins", eval_scores_box.drr_bins,
                          "FAR-grid DRR bin count");
  add_common_flags(eval_scores, &eval_scores_box);

  try {
    app.parse(argc, argv);

    if (*analyze) {
      run_analyze(analyze_args, resolve(analyze, analyze_box),
                  analyze_box.workers);
    } else if (*partition) {
      run_partition(partition_args, resolve(partition, partition_box),
                    partition_box.workers);
    } else if (*synthesize) {
      run_synthesize(synthesize_args, resolve(synthesize, synthesize_box),
                     synthesize_box.workers);
    } else if (*simulate) {
      run_simulate(simulate_args, resolve(simulate, simulate_box),
                   simulate_box.workers);
    } else if (*build_eval) {
      run_build_eval(build_eval_args, resolve(build_eval, build_eval_box),
                     build_eval_box.workers);
    } else if (*augment) {
      run_augment(augment_args, resolve(augment, augment_box),
                  augment_box.workers);
    } else if (*eval_scores) {
      run_eval_scores(eval_scores_args, resolve(eval_scores, eval_scores_box));
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 1;
  } catch (const rf::IoError& e) {
    std::fprintf(stderr, "error: io: %s\n", e.what());
    return 2;
  } catch (const rf::ValidationError& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}

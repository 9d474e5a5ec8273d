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

#include "reverbforge/rir_synthesis.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>

#include "reverbforge/errors.hpp"
#include "reverbforge/filters.hpp"
#include "reverbforge/parallel.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {
namespace {

// Applies the decay-rate correction ramp to one late-field sequence.
Samples apply_decay_ramp(SampleRef late, Eigen::Index t_d, Eigen::Index begin,
                         double delta_orig, double delta_target,
                         double sample_rate) {
  Samples out = Samples::Zero(late.size());
  const Eigen::Index len = late.size() - begin;
  if (len <= 0) return out;
  const double d_delta = delta_target - delta_orig;
  if (d_delta == 0.0) {
    out.tail(len) = late.tail(len);
    return out;
  }
  const Samples t = Samples::LinSpaced(len, static_cast<double>(begin - t_d),
                                       static_cast<double>(late.size() - 1 -
                                                           t_d)) /
                    sample_rate;
  out.tail(len) = late.tail(len) * (-d_delta * t).exp();
  return out;
}

}  // namespace

Samples reshape_t60(const EarlyLateSplit& split, double t60_orig,
                    double t60_target, double sample_rate) {
  if (!(t60_orig > 0.0) || !(t60_target > 0.0)) {
    throw ValidationError("reverberation times must be positive");
  }
  return apply_decay_ramp(split.late, split.t_d, split.late_begin(),
                          decay_rate(t60_orig), decay_rate(t60_target),
                          sample_rate);
}

Samples reshape_t60_bands(const EarlyLateSplit& split,
                          const std::vector<LateBand>& bands,
                          double t60_target, double sample_rate) {
  if (!(t60_target > 0.0)) {
    throw ValidationError("reverberation times must be positive");
  }
  if (bands.empty()) throw ValidationError("no bands to reshape");
  Samples out = Samples::Zero(split.late.size());
  const double delta_target = decay_rate(t60_target);
  for (const LateBand& band : bands) {
    out += apply_decay_ramp(band.late, split.t_d, split.late_begin(),
                            decay_rate(band.t60_s), delta_target, sample_rate);
  }
  return out;
}

Samples reshape_drr(const EarlyLateSplit& split, SampleRef late_prime,
                    double drr_target_db) {
  const double late_energy = late_prime.square().sum();
  if (late_energy <= 0.0) {
    throw ValidationError("reshaped late field has no energy");
  }
  const double early_energy = split.early.square().sum();
  if (early_energy <= 0.0) {
    throw ValidationError("early response has no energy");
  }
  const double alpha = std::sqrt(std::pow(10.0, drr_target_db / 10.0) *
                                 late_energy / early_energy);
  return split.early * alpha;
}

ParentContext analyze_parent(const ImpulseResponse& parent,
                             const AnalysisOptions& options) {
  const SampleRef h = parent.wave.samples;
  const double fs = parent.wave.sample_rate;

  ParentContext ctx;
  ctx.options = options;
  ctx.split = split_early_late(h, fs, options.t_0);
  ctx.drr_db = estimate_drr(ctx.split);
  ctx.t60_s = estimate_t60(h, fs, options.fit, options.t_0);  // must succeed

  for (const double c : default_octave_centers(fs)) {
    Samples filtered = octave_bandpass(ctx.split.late, c, fs);
    try {
      const double band_t60 =
          estimate_t60(filtered, fs, options.fit, options.t_0);
      ctx.bands.push_back({c, band_t60, std::move(filtered)});
    } catch (const ValidationError&) {
      // Band omitted; synthesis falls back to broadband when fewer than
      // three bands survive.
    }
  }
  return ctx;
}

SynthesisOutcome synthesize(const ImpulseResponse& parent,
                            const ParentContext& ctx,
                            const SynthesisTarget& target) {
  const SampleRef h = parent.wave.samples;
  const double fs = parent.wave.sample_rate;

  Samples late_prime =
      ctx.bands.size() >= 3
          ? reshape_t60_bands(ctx.split, ctx.bands, target.t60_s, fs)
          : reshape_t60(ctx.split, ctx.t60_s, target.t60_s, fs);
  Samples early_prime = reshape_drr(ctx.split, late_prime, target.drr_db);

  SynthesisOutcome outcome;
  // Rejection rule, checked before normalization: a late field whose peak
  // outgrows the early response is not a plausible RIR.
  if (late_prime.abs().maxCoeff() > early_prime.abs().maxCoeff()) {
    return outcome;
  }

  Samples combined = early_prime + late_prime;
  const Eigen::Index pre = ctx.split.early_begin();
  if (pre > 0) combined.head(pre) = h.head(pre);
  const double peak = combined.abs().maxCoeff();
  if (peak <= 0.0) throw ValidationError("synthesized RIR is silent");
  combined *= 0.9 / peak;

  outcome.accepted = true;
  outcome.wave.samples = std::move(combined);
  outcome.wave.sample_rate = parent.wave.sample_rate;
  outcome.wave.source_id = parent.rir_id;

  // Achieved parameters come from the same estimators that analyzed the
  // parent, applied to the finished output.
  const EarlyLateSplit out_split =
      split_early_late(outcome.wave.samples, fs, ctx.options.t_0);
  outcome.achieved.drr_db = estimate_drr(out_split);
  try {
    outcome.achieved.t60_s = estimate_t60(outcome.wave.samples, fs,
                                          ctx.options.fit, ctx.options.t_0);
  } catch (const ValidationError&) {
    outcome.achieved.t60_s = kNan;
  }
  return outcome;
}

SynthesisOutcome synthesize(const ImpulseResponse& parent,
                            const SynthesisTarget& target) {
  return synthesize(parent, analyze_parent(parent), target);
}

SynthesisTarget sample_target(Rng& rng, const TargetRanges& ranges) {
  SynthesisTarget target;
  target.t60_s = rng.uniform(ranges.t60_min, ranges.t60_max);
  target.drr_db = rng.uniform(ranges.drr_min, ranges.drr_max);
  return target;
}

ExpandStats expand_inventory(const std::vector<ImpulseResponse>& parents,
                             const ExpandOptions& options,
                             const SynthesisSink& sink,
                             const ProgressFn& progress) {
  if (options.n_per_parent < 1) {
    throw ValidationError("n_per_parent must be at least 1");
  }

  struct ParentResult {
    std::vector<GenerationLogEntry> log;
    bool failed = false;
    long accepted = 0;
  };
  std::vector<ParentResult> results(parents.size());
  std::atomic<long> done{0};
  const long total =
      static_cast<long>(parents.size()) * options.n_per_parent;
  std::mutex progress_mutex;

  parallel_for(static_cast<long>(parents.size()), options.workers,
               [&](long pi) {
    const ImpulseResponse& parent = parents[static_cast<std::size_t>(pi)];
    ParentResult& res = results[static_cast<std::size_t>(pi)];

    ParentContext ctx;
    try {
      ctx = analyze_parent(parent, options.analysis);
    } catch (const ValidationError&) {
      res.failed = true;  // unanalyzable parent: every slot stays unfilled
      done.fetch_add(options.n_per_parent, std::memory_order_relaxed);
      return;
    }

    Rng rng(substream_key(options.seed, "synthesize", parent.rir_id));
    for (int slot = 1; slot <= options.n_per_parent; ++slot) {
      bool filled = false;
      for (int attempt = 1; attempt <= options.retry_cap; ++attempt) {
        const SynthesisTarget target = sample_target(rng, options.ranges);
        SynthesisOutcome outcome = synthesize(parent, ctx, target);

        GenerationLogEntry entry;
        entry.parent_id = parent.rir_id;
        entry.slot = slot;
        entry.attempt = attempt;
        entry.t60_target = target.t60_s;
        entry.drr_target = target.drr_db;
        entry.accepted = outcome.accepted;
        if (outcome.accepted) {
          entry.t60_achieved = outcome.achieved.t60_s;
          entry.drr_achieved = outcome.achieved.drr_db;
        }
        res.log.push_back(entry);

        if (outcome.accepted) {
          ImpulseResponse syn;
          syn.rir_id = parent.rir_id + "_syn" + std::to_string(slot);
          syn.kind = RirKind::synthetic;
          syn.wave = std::move(outcome.wave);
          syn.wave.source_id = syn.rir_id;
          if (sink) sink(syn, res.log.back());
          ++res.accepted;
          filled = true;
          break;
        }
      }
      if (!filled) res.failed = true;  // retry cap exhausted for this slot
      const long d = done.fetch_add(1, std::memory_order_relaxed) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, total);
      }
    }
  });

  ExpandStats stats;
  for (std::size_t pi = 0; pi < parents.size(); ++pi) {
    ParentResult& res = results[pi];
    stats.accepted += res.accepted;
    stats.attempts += static_cast<long>(res.log.size());
    if (res.failed) stats.failed_parents.push_back(parents[pi].rir_id);
    stats.log.insert(stats.log.end(),
                     std::make_move_iterator(res.log.begin()),
                     std::make_move_iterator(res.log.end()));
  }
  return stats;
}

void write_generation_log(const std::filesystem::path& path,
                          const std::vector<GenerationLogEntry>& log) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "parent_id,slot,attempt,t60_target,drr_target,accepted,"
         "t60_achieved,drr_achieved\n";
  for (const GenerationLogEntry& e : log) {
    require_csv_safe(e.parent_id, "parent_id");
    out << e.parent_id << ',' << e.slot << ',' << e.attempt << ','
        << format_double(e.t60_target) << ',' << format_double(e.drr_target)
        << ',' << (e.accepted ? 1 : 0) << ',' << format_double(e.t60_achieved)
        << ',' << format_double(e.drr_achieved) << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

std::vector<GenerationLogEntry> read_generation_log(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open generation log: " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      std::string(trim(line)) !=
          "parent_id,slot,attempt,t60_target,drr_target,accepted,"
          "t60_achieved,drr_achieved") {
    throw ValidationError("bad generation-log header in: " + path.string());
  }
  std::vector<GenerationLogEntry> log;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw ValidationError("bad generation-log row in: " + path.string());
    }
    GenerationLogEntry e;
    e.parent_id = fields[0];
    e.slot = static_cast<int>(parse_long(fields[1], "slot"));
    e.attempt = static_cast<int>(parse_long(fields[2], "attempt"));
    e.t60_target = parse_double(fields[3], "t60_target");
    e.drr_target = parse_double(fields[4], "drr_target");
    e.accepted = parse_long(fields[5], "accepted") != 0;
    e.t60_achieved = parse_double(fields[6], "t60_achieved");
    e.drr_achieved = parse_double(fields[7], "drr_achieved");
    log.push_back(std::move(e));
  }
  return log;
}

}  // namespace reverbforge

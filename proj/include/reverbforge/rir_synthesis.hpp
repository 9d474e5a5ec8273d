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
// Synthetic RIR generation: reshape a recorded parent's late-field decay to
// a target T60, rescale its early response to a target DRR, and expand a
// parent inventory by drawing uniform targets with a peak-based rejection
// rule.

#ifndef REVERBFORGE_RIR_SYNTHESIS_HPP_
#define REVERBFORGE_RIR_SYNTHESIS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "reverbforge/rir_analysis.hpp"
#include "reverbforge/rng.hpp"
#include "reverbforge/types.hpp"

namespace reverbforge {

// Uniform sampling ranges for synthesis targets.
struct TargetRanges {
  double t60_min = 0.02, t60_max = 2.0;   // seconds
  double drr_min = -10.0, drr_max = 30.0;  // dB
};

struct SynthesisTarget {
  double t60_s = 0.0;
  double drr_db = 0.0;
};

struct SynthesisOutcome {
  bool accepted = false;
  int attempts = 1;
  Waveform wave;            // populated only when accepted
  AcousticParams achieved;  // re-estimated on the output when accepted;
                            // t60_s is NaN if the post-fit failed
};

// One octave band of a parent's late field, pre-filtered so repeated
// syntheses from the same parent only pay for the gain ramp.
struct LateBand {
  double center_hz = 0.0;
  double t60_s = 0.0;  // band decay estimate of the parent's late field
  Samples late;        // causally band-passed late field, parent index space
};

// Everything synthesis needs from a parent, computed once and reused across
// target draws. analyze_parent throws when the parent has no usable direct
// path or its broadband decay cannot be fit.
struct ParentContext {
  EarlyLateSplit split;
  double t60_s = 0.0;
  double drr_db = 0.0;
  std::vector<LateBand> bands;  // only bands whose decay fit succeeded
  AnalysisOptions options;
};

ParentContext analyze_parent(const ImpulseResponse& parent,
                             const AnalysisOptions& options = {});

// Broadband decay reshaping:
//   late'(t) = late(t) * exp(-(delta_target - delta_orig) * (t - t_d) / fs)
// with delta = ln(1000) / t60. An equal target is an exact identity.
Samples reshape_t60(const EarlyLateSplit& split, double t60_orig,
                    double t60_target, double sample_rate);

// Per-band variant: applies each band's own gain ramp (from that band's
// decay estimate) and sums the reshaped bands.
Samples reshape_t60_bands(const EarlyLateSplit& split,
                          const std::vector<LateBand>& bands,
                          double t60_target, double sample_rate);

// Scales the early response so that the early/late' energy ratio hits the
// target DRR exactly:
//   early' = alpha * early,
//   alpha = sqrt(10^(drr/10) * sum late'^2 / sum early^2).
Samples reshape_drr(const EarlyLateSplit& split, SampleRef late_prime,
                    double drr_target_db);

// Full pipeline: split -> reshape_t60 (per-band when >= 3 bands are
// available) -> reshape_drr -> recombine with the parent's pre-direct
// samples preserved verbatim -> peak-normalize to 0.9. The combination is
// rejected (not an error) when max|late'| > max|early'| before
// normalization.
SynthesisOutcome synthesize(const ImpulseResponse& parent,
                            const ParentContext& context,
                            const SynthesisTarget& target);
SynthesisOutcome synthesize(const ImpulseResponse& parent,
                            const SynthesisTarget& target);

// Independent uniform draws over the target ranges: t60 first, then drr.
SynthesisTarget sample_target(Rng& rng, const TargetRanges& ranges = {});

// One generation-log row per synthesis attempt. Achieved values are NaN
// (empty CSV fields) on rejected attempts and when the post-fit failed.
struct GenerationLogEntry {
  std::string parent_id;
  int slot = 0;     // 1-based output slot within the parent
  int attempt = 0;  // 1-based attempt number within the slot
  double t60_target = 0.0;
  double drr_target = 0.0;
  bool accepted = false;
  double t60_achieved = kNan;
  double drr_achieved = kNan;
};

struct ExpandOptions {
  int n_per_parent = 500;
  std::uint64_t seed = 1;
  int workers = 1;
  int retry_cap = 1000;  // attempts per slot before flagging the parent
  TargetRanges ranges;
  AnalysisOptions analysis;
};

struct ExpandStats {
  long accepted = 0;
  long attempts = 0;
  std::vector<std::string> failed_parents;  // analysis failure or cap hit
  std::vector<GenerationLogEntry> log;      // every attempt, parent order
};

// Receives each accepted synthetic RIR (named <parent_id>_syn<slot>) as it
// is produced. Called from worker threads; implementations must be
// thread-safe. Output bytes depend only on (parents, options), never on
// scheduling: each parent draws from its own substream keyed by
// (seed, parent_id) and the log is assembled in parent order.
using SynthesisSink =
    std::function<void(const ImpulseResponse&, const GenerationLogEntry&)>;

using ProgressFn = std::function<void(long done, long total)>;

ExpandStats expand_inventory(const std::vector<ImpulseResponse>& parents,
                             const ExpandOptions& options,
                             const SynthesisSink& sink,
                             const ProgressFn& progress = {});

// Generation-log CSV with header
//   parent_id,slot,attempt,t60_target,drr_target,accepted,t60_achieved,drr_achieved
void write_generation_log(const std::filesystem::path& path,
                          const std::vector<GenerationLogEntry>& log);
std::vector<GenerationLogEntry> read_generation_log(
    const std::filesystem::path& path);

}  // namespace reverbforge

#endif  // REVERBFORGE_RIR_SYNTHESIS_HPP_

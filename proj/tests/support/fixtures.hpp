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

// Constructed test signals with known ground truth:
//   - exponential RIRs whose T60 and DRR are exact by construction,
//   - small live shoebox rooms whose direct path provably dominates,
//   - a deterministic toy speech corpus plus a toy spoofing detector.

#ifndef REVERBFORGE_TESTS_SUPPORT_FIXTURES_HPP_
#define REVERBFORGE_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "reverbforge/manifest.hpp"
#include "reverbforge/room_simulator.hpp"
#include "reverbforge/types.hpp"
#include "reverbforge/wave_io.hpp"

namespace reverbforge::testing {

struct ExponentialRirSpec {
  double t60_s = 0.5;
  double drr_db = 5.0;  // exact early/late energy ratio of the construction
  double length_s = 2.5;
  int sample_rate = 16000;
  Eigen::Index t_d = 480;          // direct-path sample
  double t_0 = 0.0025;             // early-window half-width the DRR is
                                   // constructed against
  double pre_direct_level = 0.0;   // uniform noise before the early window
  std::uint64_t seed = 1234;
  std::string rir_id = "exp";
};

// Direct impulse plus two in-window reflections, then a uniform-noise tail
// with exact exponential envelope exp(-ln(1000)/t60 * (t - t_d)/fs). The
// early response is scaled so the early/late energy ratio equals drr_db
// exactly; the direct impulse remains the global peak (checked).
reverbforge::ImpulseResponse make_exponential_rir(
    const ExponentialRirSpec& spec);

// Small, nearly cubic, live room with the microphone close enough to the
// source that the direct path dominates every image cluster. Variants 0-2
// differ in dimensions and reflectivity (T60 roughly 0.3-0.7 s).
reverbforge::RoomSpec small_live_room(int variant);

// Renders small_live_room(variant) and verifies that the detected direct
// path lands within one sample of distance/c.
reverbforge::ImpulseResponse make_simulated_parent(int variant);

// Writes each RIR as <rir_id>.wav under dir (float32: the depth the
// pipeline itself uses for RIR artifacts).
void write_rir_set(const std::filesystem::path& dir,
                   const std::vector<reverbforge::ImpulseResponse>& rirs,
                   reverbforge::BitDepth depth = reverbforge::BitDepth::float32);

struct ToyCorpusSpec {
  int n_utts = 50;  // alternating bonafide / spoof
  std::uint64_t seed = 77;
  int sample_rate = 16000;
  double duration_s = 0.35;
  std::string condition = "clean";
};

// Deterministic harmonic "speech" corpus: odd utterances are bonafide,
// even ones are spoof (with an extra high-frequency component the toy
// detector keys on). WAVs plus manifest.csv are written under dir; the
// manifest is also returned.
reverbforge::TrialManifest make_toy_corpus(const std::filesystem::path& dir,
                                           const ToyCorpusSpec& spec = {});

// Deterministic toy detector score (higher = more bonafide-like): the
// negated first-difference energy ratio, which the spoof tone inflates.
double toy_score(const reverbforge::Waveform& wave);

// Two-column `utt_id score` text file.
void write_score_file(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& scores);

}  // namespace reverbforge::testing

#endif  // REVERBFORGE_TESTS_SUPPORT_FIXTURES_HPP_

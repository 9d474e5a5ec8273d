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

#include "support/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "reverbforge/errors.hpp"
#include "reverbforge/rir_analysis.hpp"
#include "reverbforge/rng.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge::testing {

using reverbforge::ImpulseResponse;
using reverbforge::Rng;
using reverbforge::Samples;

ImpulseResponse make_exponential_rir(const ExponentialRirSpec& spec) {
  const int fs = spec.sample_rate;
  const Eigen::Index n =
      static_cast<Eigen::Index>(std::lround(spec.length_s * fs));
  const Eigen::Index w =
      static_cast<Eigen::Index>(std::lround(spec.t_0 * fs));
  if (spec.t_d < w || spec.t_d + w + 1 >= n) {
    throw std::logic_error("exponential fixture: t_d leaves no room");
  }

  Rng rng(spec.seed);
  Samples h = Samples::Zero(n);

  if (spec.pre_direct_level > 0.0) {
    for (Eigen::Index t = 0; t < spec.t_d - w; ++t) {
      h[t] = rng.uniform(-1.0, 1.0) * spec.pre_direct_level;
    }
  }

  // Early response: the direct impulse plus two in-window reflections.
  h[spec.t_d] = 1.0;
  h[spec.t_d + 9] = 0.45;
  h[spec.t_d + 21] = 0.27;

  // Late field: uniform noise under an exact exponential envelope whose
  // decay clock starts at the direct path.
  const double delta = std::log(1000.0) / spec.t60_s;
  for (Eigen::Index t = spec.t_d + w + 1; t < n; ++t) {
    const double envelope =
        std::exp(-delta * static_cast<double>(t - spec.t_d) / fs);
    h[t] = rng.uniform(-1.0, 1.0) * envelope;
  }

  // Scale the early response so the early/late energy ratio is exact.
  const double early_energy = h.segment(spec.t_d - w, 2 * w + 1).square().sum();
  const double late_energy = h.tail(n - (spec.t_d + w + 1)).square().sum();
  const double alpha =
      std::sqrt(std::pow(10.0, spec.drr_db / 10.0) * late_energy /
                early_energy);
  h.segment(spec.t_d - w, 2 * w + 1) *= alpha;

  // The construction is only valid while the direct impulse stays the
  // global peak; otherwise the analyzer would segment a different RIR.
  const double direct = std::abs(h[spec.t_d]);
  Eigen::Index peak_at = 0;
  h.abs().maxCoeff(&peak_at);
  if (peak_at != spec.t_d) {
    throw std::logic_error(
        "exponential fixture: direct path does not dominate (t60 " +
        format_double(spec.t60_s) + ", drr " + format_double(spec.drr_db) +
        ")");
  }

  h *= 0.9 / direct;

  ImpulseResponse ir;
  ir.wave.samples = std::move(h);
  ir.wave.sample_rate = fs;
  ir.wave.source_id = spec.rir_id;
  ir.rir_id = spec.rir_id;
  ir.kind = reverbforge::RirKind::recorded;
  return ir;
}

reverbforge::RoomSpec small_live_room(int variant) {
  reverbforge::RoomSpec spec;
  switch (variant) {
    case 0:
      spec.dimensions = {3.1, 3.4, 2.9};
      spec.wall_reflectivity = {0.92, 0.92, 0.92, 0.92, 0.92, 0.92};
      break;
    case 1:
      spec.dimensions = {3.4, 2.9, 2.7};
      spec.wall_reflectivity = {0.88, 0.88, 0.88, 0.88, 0.88, 0.88};
      break;
    case 2:
      spec.dimensions = {3.0, 3.6, 3.1};
      spec.wall_reflectivity = {0.94, 0.94, 0.94, 0.94, 0.94, 0.94};
      break;
    default:
      throw std::logic_error("small_live_room: variant out of range");
  }
  // Asymmetric placement avoids degenerate image clusters (reflections
  // landing on the same sample), and the mic stays close to the source so
  // the direct tap outweighs even stacked late clusters in the liveliest
  // variant.
  spec.source = {0.83, 1.31, 1.07};
  spec.mic = {1.52, 1.97, 1.44};
  spec.sample_rate = 16000;
  return spec;
}

reverbforge::ImpulseResponse make_simulated_parent(int variant) {
  const reverbforge::RoomSpec room = small_live_room(variant);
  reverbforge::ImpulseResponse ir = reverbforge::simulate_rir(
      room, "simparent" + std::to_string(variant + 1));

  const double distance = (room.source - room.mic).norm();
  const double expected =
      distance / room.speed_of_sound * room.sample_rate;
  const Eigen::Index detected =
      reverbforge::detect_direct_path(ir.wave.samples);
  if (std::abs(static_cast<double>(detected) - expected) > 1.0) {
    throw std::logic_error("simulated parent: direct path not dominant");
  }
  return ir;
}

void write_rir_set(const std::filesystem::path& dir,
                   const std::vector<reverbforge::ImpulseResponse>& rirs,
                   reverbforge::BitDepth depth) {
  std::filesystem::create_directories(dir);
  for (const ImpulseResponse& ir : rirs) {
    reverbforge::write_wave(ir.wave, dir / (ir.rir_id + ".wav"), depth);
  }
}

reverbforge::TrialManifest make_toy_corpus(const std::filesystem::path& dir,
                                           const ToyCorpusSpec& spec) {
  std::filesystem::create_directories(dir);
  const int fs = spec.sample_rate;
  const Eigen::Index n =
      static_cast<Eigen::Index>(std::lround(spec.duration_s * fs));

  reverbforge::TrialManifest manifest;
  manifest.base_dir = dir;
  for (int i = 1; i <= spec.n_utts; ++i) {
    char utt_id[16];
    std::snprintf(utt_id, sizeof(utt_id), "utt%03d", i);
    const bool spoof = (i % 2) == 0;

    Rng rng(reverbforge::substream_key(spec.seed, "toy-corpus", utt_id));
    const double f0 = 105.0 + 12.0 * (i % 7);
    Samples x = Samples::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t) {
      const double time = static_cast<double>(t) / fs;
      // Rising-then-falling envelope so the signal looks utterance-shaped.
      const double envelope =
          std::sin(M_PI * static_cast<double>(t) / static_cast<double>(n));
      double v = 0.5 * std::sin(2.0 * M_PI * f0 * time) +
                 0.25 * std::sin(2.0 * M_PI * 2.0 * f0 * time + 0.7) +
                 0.12 * std::sin(2.0 * M_PI * 3.0 * f0 * time + 1.9);
      if (spoof) {
        // Vocoder-ish artifact: a high-frequency component the toy
        // detector picks up.
        v += 0.10 * std::sin(2.0 * M_PI * 6300.0 * time);
      }
      v += 0.01 * rng.gaussian();
      x[t] = 0.55 * envelope * v;
    }

    reverbforge::Waveform wave;
    wave.samples = std::move(x);
    wave.sample_rate = fs;
    wave.source_id = utt_id;
    reverbforge::write_wave(wave, dir / (std::string(utt_id) + ".wav"),
                            reverbforge::BitDepth::pcm16);

    reverbforge::ManifestRow row;
    row.utt_id = utt_id;
    row.path = std::string(utt_id) + ".wav";
    row.label = spoof ? reverbforge::TrialLabel::spoof
                      : reverbforge::TrialLabel::bonafide;
    row.condition = spec.condition;
    manifest.rows.push_back(std::move(row));
  }
  manifest.write_csv(dir / "manifest.csv");
  return manifest;
}

double toy_score(const reverbforge::Waveform& wave) {
  const Samples& x = wave.samples;
  if (x.size() < 2) return 0.0;
  const double energy = x.square().sum();
  if (energy <= 0.0) return 0.0;
  const double diff_energy =
      (x.tail(x.size() - 1) - x.head(x.size() - 1)).square().sum();
  return -diff_energy / energy;
}

void write_score_file(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& scores) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw reverbforge::IoError("cannot open for writing: " + path.string());
  }
  for (const auto& [utt_id, score] : scores) {
    out << utt_id << " " << reverbforge::format_double(score) << "\n";
  }
  out.flush();
  if (!out) {
    throw reverbforge::IoError("write failure on: " + path.string());
  }
}

}  // namespace reverbforge::testing

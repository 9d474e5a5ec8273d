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
// Run configuration shared by every CLI subcommand, with a plain key-value
// file format and flag > file > environment > default precedence.

#ifndef REVERBFORGE_CONFIG_HPP_
#define REVERBFORGE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace reverbforge {

// Every pipeline constant in one place; the defaults reproduce the
// documented pipeline shape with no flags at all.
struct RunConfig {
  std::uint64_t seed = 1;
  double t_0 = 0.0025;       // early-window half-width, seconds
  double t60_min = 0.02;     // synthesis target range, seconds
  double t60_max = 2.0;
  double drr_min = -10.0;    // synthesis target range, dB
  double drr_max = 30.0;
  double p_apply = 0.99;     // augmentation reverberation probability
  double scale_min = 0.4;    // amplitude scale range
  double scale_max = 1.0;
  double fit_high_db = -5.0;  // decay-fit window on the EDC
  double fit_low_db = -25.0;
  int t60_bins = 8;          // FAR-grid bins
  int drr_bins = 8;

  // Throws ValidationError when any field leaves its documented domain.
  void validate() const;
};

// Fields that may arrive from a config file or CLI flags; unset fields fall
// through to the next precedence layer.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> t_0;
  std::optional<double> t60_min, t60_max;
  std::optional<double> drr_min, drr_max;
  std::optional<double> p_apply;
  std::optional<double> scale_min, scale_max;
  std::optional<double> fit_high_db, fit_low_db;
  std::optional<int> t60_bins, drr_bins;
};

// `key = value` lines with '#' comments; unknown keys are errors.
ConfigOverrides parse_config_file(const std::filesystem::path& path);

// Lossless round trip: parse_config_file(serialize(config)) == config.
std::string serialize_config(const RunConfig& config);
void write_config_file(const RunConfig& config,
                       const std::filesystem::path& path);

// Environment variable consulted for the seed when neither a flag nor a
// config file sets one.
inline constexpr const char* kSeedEnvVar = "REVERB_FORGE_SEED";

// Precedence: flags > config file > REVERB_FORGE_SEED (seed only) >
// defaults. `env_seed` is the raw environment value (nullptr when unset).
RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const ConfigOverrides& flags,
                         const char* env_seed);

}  // namespace reverbforge

#endif  // REVERBFORGE_CONFIG_HPP_

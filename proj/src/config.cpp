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

#include "reverbforge/config.hpp"

#include <fstream>
#include <sstream>

#include "reverbforge/errors.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {
namespace {

std::uint64_t parse_seed(std::string_view s, const std::string& what) {
  const std::string tmp(s);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(tmp.c_str(), &end, 10);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || errno == ERANGE ||
      tmp.front() == '-') {
    throw ValidationError("malformed seed for " + what + ": '" + tmp + "'");
  }
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (!(t_0 > 0.0)) throw ValidationError("t_0 must be positive");
  if (!(t60_min > 0.0) || !(t60_min < t60_max)) {
    throw ValidationError("t60 range must satisfy 0 < t60_min < t60_max");
  }
  if (!(drr_min < drr_max)) {
    throw ValidationError("drr range must satisfy drr_min < drr_max");
  }
  if (!(p_apply >= 0.0 && p_apply <= 1.0)) {
    throw ValidationError("p_apply must lie in [0, 1]");
  }
  if (!(scale_min > 0.0) || !(scale_min <= scale_max) || !(scale_max <= 1.0)) {
    throw ValidationError("scale range must satisfy 0 < min <= max <= 1");
  }
  if (!(fit_high_db > fit_low_db)) {
    throw ValidationError("fit range must satisfy fit_high_db > fit_low_db");
  }
  if (t60_bins < 1 || drr_bins < 1) {
    throw ValidationError("grid bins must be at least 1");
  }
}

ConfigOverrides parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());

  ConfigOverrides cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto stripped = trim(line);
    if (stripped.empty()) continue;

    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) +
                            " is not 'key = value': " + path.string());
    }
    const auto key = std::string(trim(stripped.substr(0, eq)));
    const auto value = trim(stripped.substr(eq + 1));

    if (key == "seed") {
      cfg.seed = parse_seed(value, key);
    } else if (key == "t_0") {
      cfg.t_0 = parse_double(value, key);
    } else if (key == "t60_min") {
      cfg.t60_min = parse_double(value, key);
    } else if (key == "t60_max") {
      cfg.t60_max = parse_double(value, key);
    } else if (key == "drr_min") {
      cfg.drr_min = parse_double(value, key);
    } else if (key == "drr_max") {
      cfg.drr_max = parse_double(value, key);
    } else if (key == "p_apply") {
      cfg.p_apply = parse_double(value, key);
    } else if (key == "scale_min") {
      cfg.scale_min = parse_double(value, key);
    } else if (key == "scale_max") {
      cfg.scale_max = parse_double(value, key);
    } else if (key == "fit_high_db") {
      cfg.fit_high_db = parse_double(value, key);
    } else if (key == "fit_low_db") {
      cfg.fit_low_db = parse_double(value, key);
    } else if (key == "t60_bins") {
      cfg.t60_bins = static_cast<int>(parse_long(value, key));
    } else if (key == "drr_bins") {
      cfg.drr_bins = static_cast<int>(parse_long(value, key));
    } else {
      throw ValidationError("unknown config key: '" + key + "'");
    }
  }
  return cfg;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "seed = " << config.seed << "\n"
      << "t_0 = " << format_double(config.t_0) << "\n"
      << "t60_min = " << format_double(config.t60_min) << "\n"
      << "t60_max = " << format_double(config.t60_max) << "\n"
      << "drr_min = " << format_double(config.drr_min) << "\n"
      << "drr_max = " << format_double(config.drr_max) << "\n"
      << "p_apply = " << format_double(config.p_apply) << "\n"
      << "scale_min = " << format_double(config.scale_min) << "\n"
      << "scale_max = " << format_double(config.scale_max) << "\n"
      << "fit_high_db = " << format_double(config.fit_high_db) << "\n"
      << "fit_low_db = " << format_double(config.fit_low_db) << "\n"
      << "t60_bins = " << config.t60_bins << "\n"
      << "drr_bins = " << config.drr_bins << "\n";
  return out.str();
}

void write_config_file(const RunConfig& config,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << serialize_config(config);
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const ConfigOverrides& flags,
                         const char* env_seed) {
  RunConfig config;
  if (env_seed != nullptr) {
    config.seed = parse_seed(env_seed, kSeedEnvVar);
  }

  const auto apply = [&config](const ConfigOverrides& layer) {
    if (layer.seed) config.seed = *layer.seed;
    if (layer.t_0) config.t_0 = *layer.t_0;
    if (layer.t60_min) config.t60_min = *layer.t60_min;
    if (layer.t60_max) config.t60_max = *layer.t60_max;
    if (layer.drr_min) config.drr_min = *layer.drr_min;
    if (layer.drr_max) config.drr_max = *layer.drr_max;
    if (layer.p_apply) config.p_apply = *layer.p_apply;
    if (layer.scale_min) config.scale_min = *layer.scale_min;
    if (layer.scale_max) config.scale_max = *layer.scale_max;
    if (layer.fit_high_db) config.fit_high_db = *layer.fit_high_db;
    if (layer.fit_low_db) config.fit_low_db = *layer.fit_low_db;
    if (layer.t60_bins) config.t60_bins = *layer.t60_bins;
    if (layer.drr_bins) config.drr_bins = *layer.drr_bins;
  };
  if (file) apply(parse_config_file(*file));
  apply(flags);

  config.validate();
  return config;
}

}  // namespace reverbforge

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

#include "reverbforge/run_record.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "reverbforge/errors.hpp"
#include "reverbforge/rng.hpp"
#include "reverbforge/text.hpp"
#include "reverbforge/version.hpp"

namespace reverbforge {
namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::uint64_t checksum_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for checksum: " + path.string());
  std::uint64_t state = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    state = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), state);
    if (in.eof()) break;
  }
  return state;
}

std::uint64_t checksum_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::uint64_t state = 14695981039346656037ull;
  for (const auto& file : files) {
    const std::string name = file.lexically_relative(dir).generic_string();
    state = fnv1a64(name.data(), name.size(), state);
    const std::uint64_t digest = checksum_file(file);
    state = fnv1a64(&digest, sizeof(digest), state);
  }
  return state;
}

void write_run_record(const RunRecord& record,
                      const std::filesystem::path& dir) {
  nlohmann::json doc;
  doc["tool"] = "reverbforge";
  doc["version"] = kVersionString;
  doc["subcommand"] = record.subcommand;

  nlohmann::json cfg;
  cfg["seed"] = record.config.seed;
  cfg["t_0"] = format_double(record.config.t_0);
  cfg["t60_min"] = format_double(record.config.t60_min);
  cfg["t60_max"] = format_double(record.config.t60_max);
  cfg["drr_min"] = format_double(record.config.drr_min);
  cfg["drr_max"] = format_double(record.config.drr_max);
  cfg["p_apply"] = format_double(record.config.p_apply);
  cfg["scale_min"] = format_double(record.config.scale_min);
  cfg["scale_max"] = format_double(record.config.scale_max);
  cfg["fit_high_db"] = format_double(record.config.fit_high_db);
  cfg["fit_low_db"] = format_double(record.config.fit_low_db);
  cfg["t60_bins"] = record.config.t60_bins;
  cfg["drr_bins"] = record.config.drr_bins;
  doc["config"] = cfg;

  doc["params"] = record.params;

  nlohmann::json inputs = nlohmann::json::array();
  for (const RunRecord::Input& input : record.inputs) {
    inputs.push_back({{"label", input.label},
                      {"path", input.path},
                      {"fnv1a64", hex64(input.checksum)}});
  }
  doc["inputs"] = inputs;

  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "run_record.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << doc.dump(2) << "\n";
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

}  // namespace reverbforge

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
// Run records: the reproducibility receipt every CLI run writes next to its
// artifacts. Deliberately timestamp-free so identical runs produce
// byte-identical records.

#ifndef REVERBFORGE_RUN_RECORD_HPP_
#define REVERBFORGE_RUN_RECORD_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "reverbforge/config.hpp"

namespace reverbforge {

// FNV-1a over a file's raw bytes / over a directory's (name, file digest)
// pairs in sorted name order. Not cryptographic; used to detect input drift
// between runs.
std::uint64_t checksum_file(const std::filesystem::path& path);
std::uint64_t checksum_dir(const std::filesystem::path& dir);

struct RunRecord {
  std::string subcommand;
  RunConfig config;
  // Subcommand-specific parameters (counts, names, ranges) as strings.
  std::map<std::string, std::string> params;
  // (label, path, checksum) per declared input; directories use dir digests.
  struct Input {
    std::string label;
    std::string path;
    std::uint64_t checksum = 0;
  };
  std::vector<Input> inputs;
};

// Writes <dir>/run_record.json.
void write_run_record(const RunRecord& record,
                      const std::filesystem::path& dir);

}  // namespace reverbforge

#endif  // REVERBFORGE_RUN_RECORD_HPP_

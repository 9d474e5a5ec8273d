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
// Trial manifests: the CSV contract between dataset builds, augmentation
// exports, and score evaluation.

#ifndef REVERBFORGE_MANIFEST_HPP_
#define REVERBFORGE_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "reverbforge/types.hpp"

namespace reverbforge {

enum class TrialLabel { bonafide, spoof };

std::string to_string(TrialLabel label);
TrialLabel trial_label_from_string(const std::string& s);

// One trial row. Optional fields use the empty string / NaN as "absent" and
// serialize as empty CSV fields.
struct ManifestRow {
  std::string utt_id;
  std::string path;  // relative paths resolve against the manifest location
  TrialLabel label = TrialLabel::bonafide;
  std::string condition;
  std::string rir_id;
  double rir_t60 = kNan;
  double rir_drr = kNan;
  double scale = kNan;
};

struct TrialManifest {
  std::vector<ManifestRow> rows;

  // Directory the manifest was read from / will be written to; used to
  // resolve relative row paths.
  std::filesystem::path base_dir;

  // Throws ValidationError on duplicate utt_ids.
  void validate_unique_ids() const;

  std::filesystem::path resolve_path(const ManifestRow& row) const;

  static TrialManifest read_csv(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;
};

// The fixed manifest header.
inline constexpr const char* kManifestHeader =
    "utt_id,path,label,condition,rir_id,rir_t60,rir_drr,scale";

}  // namespace reverbforge

#endif  // REVERBFORGE_MANIFEST_HPP_

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

#include "reverbforge/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "reverbforge/errors.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {

std::string to_string(TrialLabel label) {
  return label == TrialLabel::bonafide ? "bonafide" : "spoof";
}

TrialLabel trial_label_from_string(const std::string& s) {
  if (s == "bonafide") return TrialLabel::bonafide;
  if (s == "spoof") return TrialLabel::spoof;
  throw ValidationError("unknown trial label: '" + s + "'");
}

void TrialManifest::validate_unique_ids() const {
  std::unordered_set<std::string> seen;
  for (const ManifestRow& row : rows) {
    if (!seen.insert(row.utt_id).second) {
      throw ValidationError("duplicate utt_id in manifest: " + row.utt_id);
    }
  }
}

std::filesystem::path TrialManifest::resolve_path(
    const ManifestRow& row) const {
  const std::filesystem::path p(row.path);
  return p.is_absolute() ? p : base_dir / p;
}

TrialManifest TrialManifest::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());

  std::string line;
  if (!std::getline(in, line) || std::string(trim(line)) != kManifestHeader) {
    throw ValidationError("bad manifest header in: " + path.string());
  }

  TrialManifest manifest;
  manifest.base_dir = path.parent_path();
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw ValidationError("manifest row " + std::to_string(line_no) +
                            " has " + std::to_string(fields.size()) +
                            " fields, expected 8: " + path.string());
    }
    ManifestRow row;
    row.utt_id = fields[0];
    row.path = fields[1];
    row.label = trial_label_from_string(fields[2]);
    row.condition = fields[3];
    row.rir_id = fields[4];
    row.rir_t60 = parse_double(fields[5], "rir_t60");
    row.rir_drr = parse_double(fields[6], "rir_drr");
    row.scale = parse_double(fields[7], "scale");
    if (row.utt_id.empty()) {
      throw ValidationError("empty utt_id at manifest row " +
                            std::to_string(line_no));
    }
    manifest.rows.push_back(std::move(row));
  }
  manifest.validate_unique_ids();
  return manifest;
}

void TrialManifest::write_csv(const std::filesystem::path& path) const {
  validate_unique_ids();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << kManifestHeader << "\n";
  for (const ManifestRow& row : rows) {
    require_csv_safe(row.utt_id, "utt_id");
    require_csv_safe(row.path, "path");
    require_csv_safe(row.condition, "condition");
    require_csv_safe(row.rir_id, "rir_id");
    out << row.utt_id << ',' << row.path << ',' << to_string(row.label) << ','
        << row.condition << ',' << row.rir_id << ','
        << format_double(row.rir_t60) << ',' << format_double(row.rir_drr)
        << ',' << format_double(row.scale) << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

}  // namespace reverbforge

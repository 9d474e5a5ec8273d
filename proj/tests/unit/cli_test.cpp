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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "reverbforge/manifest.hpp"
#include "reverbforge/rir_synthesis.hpp"
#include "support/fixtures.hpp"
#include "support/subprocess.hpp"
#include "support/tmpdir.hpp"

using reverbforge::testing::ExponentialRirSpec;
using reverbforge::testing::TmpDir;
using reverbforge::testing::make_exponential_rir;
using reverbforge::testing::run_cli;
using reverbforge::testing::write_rir_set;

namespace {

void write_fixture_rirs(const std::filesystem::path& dir, int count,
                        uint64_t seed0 = 500) {
  std::vector<reverbforge::ImpulseResponse> rirs;
  for (int i = 0; i < count; ++i) {
    ExponentialRirSpec spec;
    spec.rir_id = "room" + std::to_string(i);
    spec.t60_s = 0.3 + 0.15 * i;
    spec.drr_db = 2.0 * i;
    spec.seed = seed0 + static_cast<uint64_t>(i);
    spec.length_s = 1.8;
    rirs.push_back(make_exponential_rir(spec));
  }
  std::filesystem::create_directories(dir);
  write_rir_set(dir, rirs);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("bad invocations exit with code 1 and a parseable error line") {
  const auto unknown = run_cli({"frobnicate"});
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.stderr_text.find("error: validation:") != std::string::npos);

  const auto missing = run_cli({"analyze"});  // no --rirs / --out
  CHECK(missing.exit_code == 1);
  CHECK(missing.stderr_text.find("error: validation:") != std::string::npos);

  const auto nothing = run_cli({});
  CHECK(nothing.exit_code == 1);
}

TEST_CASE("help and version requests succeed") {
  CHECK(run_cli({"--help"}).exit_code == 0);
  const auto version = run_cli({"--version"});
  CHECK(version.exit_code == 0);
  CHECK_FALSE(version.stdout_text.empty());
}

TEST_CASE("missing inputs exit with code 2 and an io error line") {
  TmpDir dir("cli_io");
  const auto result = run_cli({"analyze", "--rirs", (dir / "nope").string(),
                               "--out", (dir / "report.csv").string()});
  CHECK(result.exit_code == 2);
  CHECK(result.stderr_text.find("error: io:") != std::string::npos);
}

TEST_CASE("analyze writes one report row per RIR plus a rerunnable record") {
  TmpDir dir("cli_analyze");
  write_fixture_rirs(dir / "rirs", 3);
  const auto out = (dir / "report.csv").string();

  const auto result = run_cli(
      {"analyze", "--rirs", (dir / "rirs").string(), "--out", out});
  REQUIRE(result.exit_code == 0);

  std::ifstream in(out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);  // header + 3 RIRs
  CHECK(rows[1].rfind("room0,recorded,", 0) == 0);
  CHECK(rows[2].rfind("room1,recorded,", 0) == 0);
  CHECK(rows[3].rfind("room2,recorded,", 0) == 0);

  // Reruns yield byte-identical artifacts: the run record embeds no
  // timestamps, hostnames, or worker counts.
  const auto record_path = dir / "run_record.json";
  REQUIRE(std::filesystem::exists(record_path));
  const std::string record_before = read_text(record_path);
  const std::string report_before = read_text(out);
  const auto rerun = run_cli(
      {"analyze", "--rirs", (dir / "rirs").string(), "--out", out});
  REQUIRE(rerun.exit_code == 0);
  CHECK(read_text(record_path) == record_before);
  CHECK(read_text(out) == report_before);
}

TEST_CASE("the seed resolves flag over config file over environment") {
  TmpDir dir("cli_seed");
  write_fixture_rirs(dir / "rirs", 6);
  const std::string rirs = (dir / "rirs").string();

  auto partition_with =
      [&](const std::string& tag, const std::vector<std::string>& extra,
          const std::map<std::string, std::string>& env) {
        const auto out = dir / ("out_" + tag);
        std::vector<std::string> args = {"partition", "--rirs", rirs,
                                         "--out",     out.string(),
                                         "--n-test",  "2"};
        args.insert(args.end(), extra.begin(), extra.end());
        const auto result = run_cli(args, env);
        REQUIRE(result.exit_code == 0);
        return read_text(out / "test.txt");
      };

  const auto config_path = dir / "run.conf";
  std::ofstream(config_path) << "seed = 2222\n";

  // Ground truth: explicit --seed runs.
  const std::string draw_1111 = partition_with("flag1111", {"--seed", "1111"}, {});
  const std::string draw_2222 = partition_with("flag2222", {"--seed", "2222"}, {});
  const std::string draw_3333 = partition_with("flag3333", {"--seed", "3333"}, {});

  // Environment alone.
  CHECK(partition_with("env", {}, {{"REVERB_FORGE_SEED", "1111"}}) ==
        draw_1111);
  // Config file beats the environment.
  CHECK(partition_with("conf", {"--config", config_path.string()},
                       {{"REVERB_FORGE_SEED", "1111"}}) == draw_2222);
  // Flag beats both.
  CHECK(partition_with("flag", {"--config", config_path.string(), "--seed",
                                "3333"},
                       {{"REVERB_FORGE_SEED", "1111"}}) == draw_3333);
}

TEST_CASE("partition rejects an unsatisfiable test draw cleanly") {
  TmpDir dir("cli_part");
  write_fixture_rirs(dir / "rirs", 2);
  const auto result =
      run_cli({"partition", "--rirs", (dir / "rirs").string(), "--out",
               (dir / "out").string(), "--n-test", "5"});
  CHECK(result.exit_code == 1);
  CHECK(result.stderr_text.find("error: validation:") != std::string::npos);
}

TEST_CASE("eval-scores emits metrics and skips the grid without metadata") {
  TmpDir dir("cli_eval");

  // A manifest whose spoof rows never saw an RIR: grid must be skipped.
  reverbforge::TrialManifest clean;
  for (int i = 0; i < 6; ++i) {
    reverbforge::ManifestRow row;
    row.utt_id = "utt" + std::to_string(i);
    row.path = row.utt_id + ".wav";
    row.label = (i % 2 == 0) ? reverbforge::TrialLabel::bonafide
                             : reverbforge::TrialLabel::spoof;
    row.condition = "clean";
    clean.rows.push_back(row);
  }
  const auto manifest_path = dir / "manifest.csv";
  clean.write_csv(manifest_path);

  const auto scores_path = dir / "scores.txt";
  {
    std::ofstream scores(scores_path);
    for (int i = 0; i < 6; ++i) {
      scores << "utt" << i << ' ' << (i % 2 == 0 ? 1.0 : -1.0) - 0.01 * i
             << "\n";
    }
  }

  const auto out_dir = dir / "metrics";
  const auto result =
      run_cli({"eval-scores", "--scores", scores_path.string(), "--manifest",
               manifest_path.string(), "--out", out_dir.string()});
  REQUIRE(result.exit_code == 0);
  CHECK(result.stdout_text.find("eer=") != std::string::npos);
  CHECK(result.stderr_text.find("skipping far_grid.csv") != std::string::npos);
  REQUIRE(std::filesystem::exists(out_dir / "metrics.json"));
  CHECK_FALSE(std::filesystem::exists(out_dir / "far_grid.csv"));

  const std::string metrics = read_text(out_dir / "metrics.json");
  CHECK(metrics.find("\"eer_percent\": 0.0") != std::string::npos);
  CHECK(metrics.find("\"n_bonafide\": 3") != std::string::npos);
  CHECK(metrics.find("\"per_condition\"") != std::string::npos);

  SUBCASE("metadata-bearing spoof trials enable the grid") {
    reverbforge::TrialManifest tagged = clean;
    for (auto& row : tagged.rows) {
      if (row.label == reverbforge::TrialLabel::spoof) {
        row.rir_id = "roomX";
        row.rir_t60 = 0.5;
        row.rir_drr = 5.0;
      }
    }
    tagged.write_csv(manifest_path);
    const auto grid_run =
        run_cli({"eval-scores", "--scores", scores_path.string(),
                 "--manifest", manifest_path.string(), "--out",
                 (dir / "metrics2").string(), "--t60-bins", "2",
                 "--drr-bins", "2"});
    REQUIRE(grid_run.exit_code == 0);
    CHECK(std::filesystem::exists(dir / "metrics2" / "far_grid.csv"));
    const std::string grid = read_text(dir / "metrics2" / "far_grid.csv");
    CHECK(grid.rfind("t60_lo,t60_hi,drr_lo,drr_hi,far,count", 0) == 0);
  }

  SUBCASE("score inversion flips a backwards detector") {
    // Negate every score: the detector becomes perfectly wrong, and
    // --invert restores it.
    const auto inverted_path = dir / "inverted.txt";
    {
      std::ofstream scores(inverted_path);
      for (int i = 0; i < 6; ++i) {
        scores << "utt" << i << ' ' << -((i % 2 == 0 ? 1.0 : -1.0) - 0.01 * i)
               << "\n";
      }
    }
    const auto fixed =
        run_cli({"eval-scores", "--scores", inverted_path.string(),
                 "--manifest", manifest_path.string(), "--out",
                 (dir / "metrics3").string(), "--invert"});
    REQUIRE(fixed.exit_code == 0);
    const std::string metrics3 = read_text(dir / "metrics3" / "metrics.json");
    CHECK(metrics3.find("\"eer_percent\": 0.0") != std::string::npos);
  }
}

TEST_CASE("synthesize writes expansions named after their parents") {
  TmpDir dir("cli_syn");
  write_fixture_rirs(dir / "parents", 2);
  const auto out_dir = dir / "expanded";
  const auto result = run_cli(
      {"synthesize", "--parents", (dir / "parents").string(), "--out",
       out_dir.string(), "--n", "3", "--seed", "4", "--t60-min", "0.2",
       "--t60-max", "1.2", "--drr-min", "0", "--drr-max", "20"});
  REQUIRE(result.exit_code == 0);
  for (const auto& name :
       {"room0_syn1.wav", "room0_syn3.wav", "room1_syn2.wav"}) {
    CHECK(std::filesystem::exists(out_dir / name));
  }
  REQUIRE(std::filesystem::exists(out_dir / "generation_log.csv"));
  const auto log = reverbforge::read_generation_log(out_dir /
                                                    "generation_log.csv");
  long accepted = 0;
  for (const auto& entry : log) accepted += entry.accepted ? 1 : 0;
  CHECK(accepted == 6);
}

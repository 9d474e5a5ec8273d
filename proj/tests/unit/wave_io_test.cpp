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

#include "reverbforge/wave_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <doctest.h>

#include "reverbforge/errors.hpp"
#include "reverbforge/rng.hpp"
#include "support/tmpdir.hpp"

using reverbforge::BitDepth;
using reverbforge::IoError;
using reverbforge::ReadInfo;
using reverbforge::Samples;
using reverbforge::ValidationError;
using reverbforge::Waveform;
using reverbforge::read_wave;
using reverbforge::write_wave;
using reverbforge::testing::TmpDir;

namespace {

Waveform make_wave(Eigen::Index n, int fs, uint64_t seed) {
  reverbforge::Rng rng(seed);
  Waveform w;
  w.samples = Samples::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) w.samples[i] = rng.uniform(-0.95, 0.95);
  w.sample_rate = fs;
  return w;
}

void append_le16(std::vector<unsigned char>* out, uint16_t v) {
  out->push_back(v & 0xff);
  out->push_back((v >> 8) & 0xff);
}

void append_le32(std::vector<unsigned char>* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back((v >> (8 * i)) & 0xff);
}

void append_tag(std::vector<unsigned char>* out, const char* tag) {
  out->insert(out->end(), tag, tag + 4);
}

// Hand-built RIFF container so reader tests do not depend on the writer.
std::vector<unsigned char> build_wav(uint16_t format, uint16_t channels,
                                     uint16_t bits,
                                     const std::vector<int16_t>& frames,
                                     bool extra_chunk_before_fmt = false) {
  std::vector<unsigned char> data;
  std::vector<unsigned char> body;
  append_tag(&body, "WAVE");
  if (extra_chunk_before_fmt) {
    append_tag(&body, "LIST");
    append_le32(&body, 5);  // odd size: exercises word-alignment padding
    body.insert(body.end(), {'I', 'N', 'F', 'O', 'x', 0});
  }
  append_tag(&body, "fmt ");
  append_le32(&body, 16);
  append_le16(&body, format);
  append_le16(&body, channels);
  append_le32(&body, 16000);
  append_le32(&body, 16000u * channels * (bits / 8));
  append_le16(&body, static_cast<uint16_t>(channels * (bits / 8)));
  append_le16(&body, bits);
  append_tag(&body, "data");
  append_le32(&body, static_cast<uint32_t>(frames.size() * 2));
  for (int16_t v : frames) append_le16(&body, static_cast<uint16_t>(v));

  append_tag(&data, "RIFF");
  append_le32(&data, static_cast<uint32_t>(body.size()));
  data.insert(data.end(), body.begin(), body.end());
  return data;
}

void write_bytes(const std::filesystem::path& path,
                 const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("pcm16 round trip is exact to half an LSB") {
  TmpDir dir("wave");
  const Waveform original = make_wave(500, 16000, 21);
  write_wave(original, dir / "x.wav", BitDepth::pcm16);
  const Waveform back = read_wave(dir / "x.wav");
  REQUIRE(back.samples.size() == original.samples.size());
  CHECK(back.sample_rate == 16000);
  CHECK((back.samples - original.samples).abs().maxCoeff() <=
        0.5 / 32768.0 + 1e-12);
}

TEST_CASE("pcm16 stores v * 32768 with the documented mapping") {
  TmpDir dir("wave");
  Waveform w;
  w.sample_rate = 8000;
  w.samples = Samples(3);
  w.samples << 0.5, -1.0, 0.25;
  write_wave(w, dir / "x.wav", BitDepth::pcm16);
  const Waveform back = read_wave(dir / "x.wav");
  CHECK(back.samples[0] == doctest::Approx(16384.0 / 32768.0).epsilon(1e-12));
  CHECK(back.samples[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(back.samples[2] == doctest::Approx(8192.0 / 32768.0).epsilon(1e-12));
}

TEST_CASE("float32 round trip is bit-exact after one write") {
  TmpDir dir("wave");
  const Waveform original = make_wave(321, 44100, 5);
  write_wave(original, dir / "f.wav", BitDepth::float32);
  const Waveform once = read_wave(dir / "f.wav");
  CHECK(once.sample_rate == 44100);
  // Values already quantized to float survive any number of round trips.
  write_wave(once, dir / "g.wav", BitDepth::float32);
  const Waveform twice = read_wave(dir / "g.wav");
  CHECK((twice.samples == once.samples).all());
}

TEST_CASE("out-of-range pcm16 samples clip at full scale and are counted") {
  TmpDir dir("wave");
  Waveform w;
  w.sample_rate = 16000;
  w.samples = Samples(4);
  w.samples << 1.5, 0.0, -2.0, 0.5;
  const auto result = write_wave(w, dir / "clip.wav", BitDepth::pcm16);
  CHECK(result.clipped == 2);
  const Waveform back = read_wave(dir / "clip.wav");
  CHECK(back.samples[0] == doctest::Approx(32767.0 / 32768.0));
  CHECK(back.samples[2] == doctest::Approx(-1.0));
}

TEST_CASE("multi-channel files yield channel zero plus a report") {
  TmpDir dir("wave");
  // Stereo: L = {100, 300, 500}, R = {200, 400, 600} interleaved.
  write_bytes(dir / "stereo.wav",
              build_wav(1, 2, 16, {100, 200, 300, 400, 500, 600}));
  ReadInfo info;
  const Waveform w = read_wave(dir / "stereo.wav", &info);
  CHECK(info.channels_in_file == 2);
  CHECK(info.picked_channel_zero);
  REQUIRE(w.samples.size() == 3);
  CHECK(w.samples[0] == doctest::Approx(100.0 / 32768.0));
  CHECK(w.samples[1] == doctest::Approx(300.0 / 32768.0));
  CHECK(w.samples[2] == doctest::Approx(500.0 / 32768.0));
}

TEST_CASE("reader walks unknown chunks with odd-size padding") {
  TmpDir dir("wave");
  write_bytes(dir / "list.wav", build_wav(1, 1, 16, {7, -7}, true));
  const Waveform w = read_wave(dir / "list.wav");
  REQUIRE(w.samples.size() == 2);
  CHECK(w.samples[0] == doctest::Approx(7.0 / 32768.0));
}

TEST_CASE("unsupported codecs are a validation error") {
  TmpDir dir("wave");
  write_bytes(dir / "alaw.wav", build_wav(6, 1, 8, {1, 2}));
  CHECK_THROWS_AS(read_wave(dir / "alaw.wav"), ValidationError);
}

TEST_CASE("structural damage is a validation error") {
  TmpDir dir("wave");

  SUBCASE("not RIFF") {
    write_bytes(dir / "bad.wav", {'N', 'O', 'P', 'E', 0, 0, 0, 0});
    CHECK_THROWS_AS(read_wave(dir / "bad.wav"), ValidationError);
  }
  SUBCASE("data chunk truncated") {
    auto bytes = build_wav(1, 1, 16, {1, 2, 3, 4});
    bytes.resize(bytes.size() - 3);
    write_bytes(dir / "trunc.wav", bytes);
    CHECK_THROWS_AS(read_wave(dir / "trunc.wav"), ValidationError);
  }
  SUBCASE("zero samples") {
    write_bytes(dir / "empty.wav", build_wav(1, 1, 16, {}));
    CHECK_THROWS_AS(read_wave(dir / "empty.wav"), ValidationError);
  }
  SUBCASE("missing data chunk") {
    auto bytes = build_wav(1, 1, 16, {1});
    // Rename the data tag so the walker never finds it.
    for (std::size_t i = 0; i + 4 <= bytes.size(); ++i) {
      if (std::memcmp(&bytes[i], "data", 4) == 0) {
        std::memcpy(&bytes[i], "datx", 4);
        break;
      }
    }
    write_bytes(dir / "nodata.wav", bytes);
    CHECK_THROWS_AS(read_wave(dir / "nodata.wav"), ValidationError);
  }
}

TEST_CASE("missing file is an io error") {
  TmpDir dir("wave");
  CHECK_THROWS_AS(read_wave(dir / "nothing.wav"), IoError);
}

TEST_CASE("the float32 writer emits a fact chunk readers accept") {
  TmpDir dir("wave");
  const Waveform original = make_wave(64, 16000, 3);
  write_wave(original, dir / "f.wav", BitDepth::float32);
  const auto bytes = read_bytes(dir / "f.wav");
  bool has_fact = false;
  for (std::size_t i = 0; i + 4 <= bytes.size(); ++i) {
    if (std::memcmp(&bytes[i], "fact", 4) == 0) has_fact = true;
  }
  CHECK(has_fact);
}

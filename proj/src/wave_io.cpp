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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "reverbforge/errors.hpp"

namespace reverbforge {
namespace {

// On-disk WAVE fields are little-endian; this code assumes a little-endian
// host (checked at compile time) and decodes via memcpy.
static_assert(std::endian::native == std::endian::little,
              "wave_io assumes a little-endian host");

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

template <typename T>
T read_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

void append_le(std::vector<unsigned char>& out, uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void append_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

Waveform read_wave(const std::filesystem::path& path, ReadInfo* info) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open wave file: " + path.string());

  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());
  if (file.bad()) throw IoError("read failure on: " + path.string());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ValidationError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  std::size_t data_offset = 0, data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* chunk_id = reinterpret_cast<const char*>(bytes.data() + pos);
    uint32_t chunk_size = read_le<uint32_t>(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw ValidationError("truncated chunk in: " + path.string());
    }
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_size < 16)
        throw ValidationError("malformed fmt chunk in: " + path.string());
      format = read_le<uint16_t>(bytes.data() + body);
      channels = read_le<uint16_t>(bytes.data() + body + 2);
      sample_rate = read_le<uint32_t>(bytes.data() + body + 4);
      bits = read_le<uint16_t>(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt)
    throw ValidationError("missing fmt chunk in: " + path.string());
  if (data_offset == 0)
    throw ValidationError("missing data chunk in: " + path.string());
  if (data_size == 0)
    throw ValidationError("zero-length data chunk in: " + path.string());
  if (channels == 0 || sample_rate == 0)
    throw ValidationError("malformed fmt chunk in: " + path.string());

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatIeeeFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw ValidationError("unsupported codec (format tag " +
                          std::to_string(format) + ", " +
                          std::to_string(bits) + "-bit) in: " + path.string());
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_size = bytes_per_sample * channels;
  const std::size_t frames = data_size / frame_size;
  if (frames == 0)
    throw ValidationError("zero-length data chunk in: " + path.string());

  Waveform wave;
  wave.sample_rate = static_cast<int>(sample_rate);
  wave.source_id = path.stem().string();
  wave.samples.resize(static_cast<Eigen::Index>(frames));

  const unsigned char* data = bytes.data() + data_offset;
  if (pcm16) {
    for (std::size_t i = 0; i < frames; ++i) {
      auto v = read_le<int16_t>(data + i * frame_size);
      wave.samples[static_cast<Eigen::Index>(i)] = v / 32768.0;
    }
  } else {
    for (std::size_t i = 0; i < frames; ++i) {
      float v;
      std::memcpy(&v, data + i * frame_size, sizeof(float));
      wave.samples[static_cast<Eigen::Index>(i)] = v;
    }
  }

  if (info != nullptr) {
    info->channels_in_file = channels;
    info->picked_channel_zero = channels > 1;
  }
  return wave;
}

WriteResult write_wave(const Waveform& wave, const std::filesystem::path& path,
                       BitDepth depth) {
  if (wave.sample_rate <= 0) throw ValidationError("non-positive sample rate");
  for (Eigen::Index i = 0; i < wave.samples.size(); ++i) {
    if (!std::isfinite(wave.samples[i])) {
      throw ValidationError("non-finite sample at index " + std::to_string(i));
    }
  }

  const auto n = static_cast<uint32_t>(wave.samples.size());
  const bool pcm = depth == BitDepth::pcm16;
  const uint32_t bytes_per_sample = pcm ? 2 : 4;
  const uint32_t data_size = n * bytes_per_sample;
  // RIFF body: WAVE + fmt(8+16) + [fact(8+4)] + data(8+size)
  const uint32_t riff_size = 4 + 24 + (pcm ? 0 : 12) + 8 + data_size;

  std::vector<unsigned char> out;
  out.reserve(riff_size + 8);
  append_tag(out, "RIFF");
  append_le(out, riff_size, 4);
  append_tag(out, "WAVE");
  append_tag(out, "fmt ");
  append_le(out, 16, 4);
  append_le(out, pcm ? kFormatPcm : kFormatIeeeFloat, 2);
  append_le(out, 1, 2);  // mono
  append_le(out, static_cast<uint32_t>(wave.sample_rate), 4);
  append_le(out, static_cast<uint32_t>(wave.sample_rate) * bytes_per_sample, 4);
  append_le(out, bytes_per_sample, 2);
  append_le(out, pcm ? 16 : 32, 2);
  if (!pcm) {
    // fact chunk is expected for non-PCM formats.
    append_tag(out, "fact");
    append_le(out, 4, 4);
    append_le(out, n, 4);
  }
  append_tag(out, "data");
  append_le(out, data_size, 4);

  WriteResult result;
  if (pcm) {
    for (Eigen::Index i = 0; i < wave.samples.size(); ++i) {
      double v = wave.samples[i];
      if (v > 1.0 || v < -1.0) {
        ++result.clipped;
        v = std::clamp(v, -1.0, 1.0);
      }
      // Scale by 32768 so 16-bit material round-trips bit-exactly; +1.0
      // saturates to +full-scale.
      auto q = static_cast<long>(std::lround(v * 32768.0));
      q = std::clamp(q, -32768l, 32767l);
      append_le(out, static_cast<uint32_t>(static_cast<int16_t>(q)), 2);
    }
  } else {
    for (Eigen::Index i = 0; i < wave.samples.size(); ++i) {
      auto v = static_cast<float>(wave.samples[i]);
      uint32_t raw;
      std::memcpy(&raw, &v, sizeof(raw));
      append_le(out, raw, 4);
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open for writing: " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  file.flush();
  if (!file) throw IoError("write failure on: " + path.string());
  return result;
}

}  // namespace reverbforge

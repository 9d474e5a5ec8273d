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

#pragma once

#include <filesystem>
#include <string>

#include "reverbforge/types.hpp"

namespace reverbforge {

enum class BitDepth { pcm16, float32 };

/// Side information from read_wave that is not part of the waveform proper.
struct ReadInfo {
  int channels_in_file = 1;
  bool picked_channel_zero = false;  // true when a multi-channel file was read
};

/// Reads a RIFF/WAVE file (PCM-16 or IEEE float-32, mono preferred).
/// Samples are normalized to [-1, 1] full scale; a 16-bit value v maps to
/// v / 32768. Multi-channel files are not an error: channel 0 is taken and
/// the selection is recorded in `info`.
Waveform read_wave(const std::filesystem::path& path, ReadInfo* info = nullptr);

struct WriteResult {
  /// Number of samples outside [-1, 1] that were clipped (16-bit path only).
  long clipped = 0;
};

/// Writes a mono RIFF/WAVE file. The 16-bit path clips out-of-range samples
/// at full scale and reports how many; the float-32 path stores values
/// verbatim, so read(write(x)) is bit-exact for float-32 sources.
WriteResult write_wave(const Waveform& wave, const std::filesystem::path& path,
                       BitDepth depth);

}  // namespace reverbforge

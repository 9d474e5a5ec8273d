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
// Shoebox-room RIR simulation with the image-source method: mirrored
// sources attenuated by wall reflectivity and spherical spreading, rendered
// with windowed-sinc fractional delays.

#ifndef REVERBFORGE_ROOM_SIMULATOR_HPP_
#define REVERBFORGE_ROOM_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reverbforge/types.hpp"

namespace reverbforge {

struct RoomSpec {
  Eigen::Vector3d dimensions{0.0, 0.0, 0.0};  // (Lx, Ly, Lz) meters
  Eigen::Vector3d source{0.0, 0.0, 0.0};
  Eigen::Vector3d mic{0.0, 0.0, 0.0};
  // Amplitude reflectivity per surface: {x=0, x=Lx, y=0, y=Ly, z=0, z=Lz}.
  std::array<double, 6> wall_reflectivity{};
  // Reflection-order cap (sum of wall crossings per image). Unset selects
  // an adaptive order that covers the room's Eyring decay to -60 dB.
  std::optional<int> max_order;
  int sample_rate = 16000;
  double speed_of_sound = 343.0;
};

// Throws ValidationError unless source and mic are distinct points strictly
// inside the room, every reflectivity is in [0, 1), and rates are positive.
void validate(const RoomSpec& spec);

// Sabine/Eyring reverberation time implied by the room geometry and wall
// reflectivity; used to pick the adaptive reflection order.
double eyring_t60(const RoomSpec& spec);

struct Arrival {
  double delay_s = 0.0;
  double amplitude = 0.0;  // product of wall reflectivities / (4 pi d)
};

// All image-source arrivals with at most max_order wall crossings, direct
// path included. Zero-amplitude images (crossing a beta = 0 wall) are
// dropped.
std::vector<Arrival> image_arrivals(const RoomSpec& spec, int max_order);

// Renders the arrivals into a sampled RIR (81-tap Hann-windowed sinc per
// arrival). Output length covers the longest included path plus a 50 ms
// tail; a projected length beyond 10 s is an error. kind == simulated.
ImpulseResponse simulate_rir(const RoomSpec& spec,
                             const std::string& rir_id = "sim");

// Sampling ranges for random room generation.
struct RoomRanges {
  double lx_min = 3.0, lx_max = 10.0;
  double ly_min = 3.0, ly_max = 10.0;
  double lz_min = 2.5, lz_max = 4.5;
  double beta_min = 0.7, beta_max = 0.95;  // drawn per surface
  double clearance_m = 0.5;       // source/mic distance from every wall
  double min_separation_m = 0.3;  // source-to-mic distance
  int sample_rate = 16000;
  double speed_of_sound = 343.0;
};

// Deterministically samples `count` rooms: uniform dimensions and per-wall
// reflectivity, uniform placement respecting clearance and separation.
// Each room draws from a substream keyed by (seed, index).
std::vector<RoomSpec> sample_rooms(std::uint64_t seed, long count,
                                   const RoomRanges& ranges = {});

// rooms.csv writer: one row of geometry and reflectivity per simulated RIR.
struct RoomReportRow {
  std::string rir_id;
  RoomSpec spec;
};
void write_room_report(const std::filesystem::path& path,
                       const std::vector<RoomReportRow>& rows);

}  // namespace reverbforge

#endif  // REVERBFORGE_ROOM_SIMULATOR_HPP_

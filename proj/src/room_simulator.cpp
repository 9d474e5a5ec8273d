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

#include "reverbforge/room_simulator.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "reverbforge/errors.hpp"
#include "reverbforge/rng.hpp"
#include "reverbforge/text.hpp"

namespace reverbforge {
namespace {

constexpr int kSincHalfWidth = 40;  // 81 taps total
constexpr double kTailSeconds = 0.05;
constexpr double kLengthCapSeconds = 10.0;
constexpr int kAdaptiveOrderCap = 80;

int adaptive_max_order(const RoomSpec& spec) {
  const double t60 = eyring_t60(spec);
  const double l_min = spec.dimensions.minCoeff();
  const int order = static_cast<int>(
      std::ceil(spec.speed_of_sound * t60 / l_min)) + 1;
  return std::clamp(order, 1, kAdaptiveOrderCap);
}

}  // namespace

void validate(const RoomSpec& spec) {
  if (!(spec.dimensions.array() > 0.0).all()) {
    throw ValidationError("room dimensions must be positive");
  }
  for (int a = 0; a < 3; ++a) {
    if (!(spec.source[a] > 0.0 && spec.source[a] < spec.dimensions[a])) {
      throw ValidationError("source must lie strictly inside the room");
    }
    if (!(spec.mic[a] > 0.0 && spec.mic[a] < spec.dimensions[a])) {
      throw ValidationError("mic must lie strictly inside the room");
    }
  }
  if (spec.source == spec.mic) {
    throw ValidationError("source and mic must be distinct");
  }
  for (const double beta : spec.wall_reflectivity) {
    if (!(beta >= 0.0 && beta < 1.0)) {
      throw ValidationError("wall reflectivity must lie in [0, 1)");
    }
  }
  if (spec.max_order && *spec.max_order < 0) {
    throw ValidationError("max_order must be non-negative");
  }
  if (spec.sample_rate <= 0) {
    throw ValidationError("sample rate must be positive");
  }
  if (!(spec.speed_of_sound > 0.0)) {
    throw ValidationError("speed of sound must be positive");
  }
}

double eyring_t60(const RoomSpec& spec) {
  const double lx = spec.dimensions[0], ly = spec.dimensions[1],
               lz = spec.dimensions[2];
  const double volume = lx * ly * lz;
  const std::array<double, 6> areas = {ly * lz, ly * lz, lx * lz,
                                       lx * lz, lx * ly, lx * ly};
  double surface = 0.0, absorbed = 0.0;
  for (int i = 0; i < 6; ++i) {
    surface += areas[i];
    // beta is an amplitude factor; energy absorption per bounce is 1 - b^2.
    absorbed += areas[i] * (1.0 - spec.wall_reflectivity[i] *
                                      spec.wall_reflectivity[i]);
  }
  const double mean_absorption = std::min(absorbed / surface, 0.999999);
  return 0.161 * volume / (-surface * std::log(1.0 - mean_absorption));
}

std::vector<Arrival> image_arrivals(const RoomSpec& spec, int max_order) {
  validate(spec);
  if (max_order < 0) throw ValidationError("max_order must be non-negative");

  // Image of order n can sit at most about n * L away along one axis, so a
  // per-axis mirror index m contributes |2m - q| crossings and is bounded
  // by the order budget.
  const int m_bound = max_order / 2 + 1;
  std::vector<Arrival> arrivals;

  for (int mx = -m_bound; mx <= m_bound; ++mx) {
    for (int my = -m_bound; my <= m_bound; ++my) {
      for (int mz = -m_bound; mz <= m_bound; ++mz) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
              const int crossings = std::abs(2 * mx - q) +
                                    std::abs(2 * my - j) +
                                    std::abs(2 * mz - k);
              if (crossings > max_order) continue;

              const Eigen::Vector3d image(
                  (1 - 2 * q) * spec.source[0] + 2 * mx * spec.dimensions[0],
                  (1 - 2 * j) * spec.source[1] + 2 * my * spec.dimensions[1],
                  (1 - 2 * k) * spec.source[2] + 2 * mz * spec.dimensions[2]);
              const double distance = (image - spec.mic).norm();

              const double reflect =
                  std::pow(spec.wall_reflectivity[0], std::abs(mx - q)) *
                  std::pow(spec.wall_reflectivity[1], std::abs(mx)) *
                  std::pow(spec.wall_reflectivity[2], std::abs(my - j)) *
                  std::pow(spec.wall_reflectivity[3], std::abs(my)) *
                  std::pow(spec.wall_reflectivity[4], std::abs(mz - k)) *
                  std::pow(spec.wall_reflectivity[5], std::abs(mz));
              if (reflect == 0.0) continue;  // crossed a fully absorbing wall

              arrivals.push_back(
                  {distance / spec.speed_of_sound,
                   reflect / (4.0 * std::numbers::pi * distance)});
            }
          }
        }
      }
    }
  }
  return arrivals;
}

ImpulseResponse simulate_rir(const RoomSpec& spec, const std::string& rir_id) {
  validate(spec);
  const int order = spec.max_order ? *spec.max_order : adaptive_max_order(spec);

  // Farthest possible image lies about order * L_max from the mic; reject
  // absurd orders before enumerating their images.
  const double far_bound = (order * spec.dimensions.maxCoeff() +
                            spec.dimensions.norm()) /
                           spec.speed_of_sound;
  if (far_bound + kTailSeconds > kLengthCapSeconds) {
    throw ValidationError("reflection order implies an RIR beyond 10 s");
  }

  const std::vector<Arrival> arrivals = image_arrivals(spec, order);
  double max_delay = 0.0;
  for (const Arrival& a : arrivals) max_delay = std::max(max_delay, a.delay_s);

  const double fs = spec.sample_rate;
  const auto length = static_cast<Eigen::Index>(
      std::ceil(max_delay * fs) + 1 + std::lround(kTailSeconds * fs));
  if (length > static_cast<Eigen::Index>(kLengthCapSeconds * fs)) {
    throw ValidationError("reflection order implies an RIR beyond 10 s");
  }

  Samples h = Samples::Zero(length);
  for (const Arrival& a : arrivals) {
    const double p = a.delay_s * fs;  // fractional sample position
    const auto lo = std::max<Eigen::Index>(
        0, static_cast<Eigen::Index>(std::ceil(p)) - kSincHalfWidth);
    const auto hi = std::min<Eigen::Index>(
        length - 1, static_cast<Eigen::Index>(std::floor(p)) + kSincHalfWidth);
    for (Eigen::Index n = lo; n <= hi; ++n) {
      const double t = static_cast<double>(n) - p;
      const double window =
          0.5 * (1.0 + std::cos(std::numbers::pi * t / kSincHalfWidth));
      const double sinc =
          t == 0.0 ? 1.0
                   : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
      h[n] += a.amplitude * window * sinc;
    }
  }

  ImpulseResponse ir;
  ir.rir_id = rir_id;
  ir.kind = RirKind::simulated;
  ir.wave.samples = std::move(h);
  ir.wave.sample_rate = spec.sample_rate;
  ir.wave.source_id = rir_id;
  return ir;
}

std::vector<RoomSpec> sample_rooms(std::uint64_t seed, long count,
                                   const RoomRanges& ranges) {
  if (count < 1) throw ValidationError("room count must be at least 1");
  const double c = ranges.clearance_m;
  if (ranges.lx_min <= 2.0 * c || ranges.ly_min <= 2.0 * c ||
      ranges.lz_min <= 2.0 * c) {
    throw ValidationError(
        "dimension ranges leave no interior after wall clearance");
  }

  std::vector<RoomSpec> rooms;
  rooms.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    Rng rng(substream_key(seed, "simulate", std::to_string(i + 1)));
    RoomSpec spec;
    spec.sample_rate = ranges.sample_rate;
    spec.speed_of_sound = ranges.speed_of_sound;
    spec.dimensions[0] = rng.uniform(ranges.lx_min, ranges.lx_max);
    spec.dimensions[1] = rng.uniform(ranges.ly_min, ranges.ly_max);
    spec.dimensions[2] = rng.uniform(ranges.lz_min, ranges.lz_max);
    for (double& beta : spec.wall_reflectivity) {
      beta = rng.uniform(ranges.beta_min, ranges.beta_max);
    }
    for (int a = 0; a < 3; ++a) {
      spec.source[a] = rng.uniform(c, spec.dimensions[a] - c);
    }
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      for (int a = 0; a < 3; ++a) {
        spec.mic[a] = rng.uniform(c, spec.dimensions[a] - c);
      }
      placed = (spec.mic - spec.source).norm() >= ranges.min_separation_m;
    }
    if (!placed) {
      throw ValidationError(
          "could not place mic with the requested separation");
    }
    validate(spec);
    rooms.push_back(spec);
  }
  return rooms;
}

void write_room_report(const std::filesystem::path& path,
                       const std::vector<RoomReportRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "rir_id,lx,ly,lz,src_x,src_y,src_z,mic_x,mic_y,mic_z,"
         "beta_x0,beta_x1,beta_y0,beta_y1,beta_z0,beta_z1,max_order\n";
  for (const RoomReportRow& row : rows) {
    require_csv_safe(row.rir_id, "rir_id");
    const RoomSpec& s = row.spec;
    out << row.rir_id;
    for (int a = 0; a < 3; ++a) out << ',' << format_double(s.dimensions[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_double(s.source[a]);
    for (int a = 0; a < 3; ++a) out << ',' << format_double(s.mic[a]);
    for (const double beta : s.wall_reflectivity) {
      out << ',' << format_double(beta);
    }
    out << ',' << (s.max_order ? std::to_string(*s.max_order) : "") << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failure on: " + path.string());
}

}  // namespace reverbforge

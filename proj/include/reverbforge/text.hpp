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
// Small text utilities shared by the CSV/config writers and readers. All
// formatting is locale-independent so output bytes are reproducible.

#ifndef REVERBFORGE_TEXT_HPP_
#define REVERBFORGE_TEXT_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "reverbforge/errors.hpp"

namespace reverbforge {

// Shortest-ish decimal form that still round-trips a double through strtod.
// NaN maps to the empty string (the CSV convention for absent values).
inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  if (std::strtod(buf, nullptr) != v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  }
  return buf;
}

// Empty string parses as NaN (absent field); otherwise the whole token must
// be consumed by strtod.
inline double parse_double(std::string_view s, const std::string& what) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) {
    throw ValidationError("malformed number for " + what + ": '" + tmp + "'");
  }
  return v;
}

inline long parse_long(std::string_view s, const std::string& what) {
  const std::string tmp(s);
  char* end = nullptr;
  const long v = std::strtol(tmp.c_str(), &end, 10);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ValidationError("malformed integer for " + what + ": '" + tmp + "'");
  }
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Plain comma split; the writers reject embedded commas so no quoting is
// needed anywhere in the toolkit's CSV surface.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(trim(line.substr(start)));
      break;
    }
    fields.emplace_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

inline void require_csv_safe(std::string_view field, const std::string& what) {
  if (field.find_first_of(",\n\r") != std::string_view::npos) {
    throw ValidationError(what + " may not contain commas or newlines: '" +
                          std::string(field) + "'");
  }
}

}  // namespace reverbforge

#endif  // REVERBFORGE_TEXT_HPP_

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

#include <stdexcept>
#include <string>

namespace reverbforge {

/// Bad input data or parameters. Maps to process exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Filesystem / OS failures. Maps to process exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message)
      : std::runtime_error(message) {}
};

/// The energy decay curve never reaches the lower fit bound. Kept distinct
/// from ValidationError so callers can retry with a wider fit range.
class InsufficientDecayError : public ValidationError {
 public:
  explicit InsufficientDecayError(const std::string& message)
      : ValidationError(message) {}
};

}  // namespace reverbforge

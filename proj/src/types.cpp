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

#include "reverbforge/types.hpp"

#include "reverbforge/errors.hpp"

namespace reverbforge {

std::string to_string(RirKind kind) {
  switch (kind) {
    case RirKind::recorded:
      return "recorded";
    case RirKind::synthetic:
      return "synthetic";
    case RirKind::simulated:
      return "simulated";
  }
  return "recorded";
}

RirKind rir_kind_from_string(const std::string& s) {
  if (s == "recorded") return RirKind::recorded;
  if (s == "synthetic") return RirKind::synthetic;
  if (s == "simulated") return RirKind::simulated;
  throw ValidationError("unknown RIR kind: " + s);
}

}  // namespace reverbforge

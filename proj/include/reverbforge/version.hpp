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

#ifndef REVERBFORGE_VERSION_HPP_
#define REVERBFORGE_VERSION_HPP_

namespace reverbforge {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace reverbforge

#endif  // REVERBFORGE_VERSION_HPP_

// Copyright 2026 The aer Authors. All Rights Reserved.
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

#include "aer/frame_set.hpp"

namespace aer {

// Frame cache layout (all integers little-endian):
//
//   char[8]  magic "AERFRAME"
//   u32      version (1)
//   u32      feature mode (0 time, 1 freq, 2 freq-mag, 3 freq-phase)
//   u32      frame length
//   u64      frame count
//   u32      clip count
//   clip table, per clip:
//     u32 id length, id bytes (UTF-8, no terminator), i32 label, u64 first frame, u64 frames
//   f32[frame count * frame length] frame values, row-major
inline constexpr char kFrameCacheMagic[8] = {'A', 'E', 'R', 'F', 'R', 'A', 'M', 'E'};
inline constexpr std::uint32_t kFrameCacheVersion = 1;

void write_frame_cache(const std::filesystem::path& path, const FrameSet& frames);
FrameSet read_frame_cache(const std::filesystem::path& path);

}  // namespace aer

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

#include <span>
#include <string>
#include <vector>

#include "aer/audio.hpp"
#include "aer/dataset.hpp"
#include "aer/frame_set.hpp"

namespace aer {

struct LabeledClip {
  std::string clip_id;
  int label = -1;
  AudioClip audio;  // mono, 16 kHz, peak-normalized
};

/// Decodes and preprocesses every entry; clip ids are the manifest paths.
std::vector<LabeledClip> load_clips(const Manifest& m, std::span<const ManifestEntry> entries);

FrameSet build_frames(std::span<const LabeledClip> clips, FeatureMode mode, const FramingConfig& cfg = {});

inline FrameSet build_frames(const Manifest& m, std::span<const ManifestEntry> entries, FeatureMode mode,
                             const FramingConfig& cfg = {}) {
  return build_frames(load_clips(m, entries), mode, cfg);
}

}  // namespace aer

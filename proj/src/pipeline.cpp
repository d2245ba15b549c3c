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

#include "aer/pipeline.hpp"

namespace aer {

std::vector<LabeledClip> load_clips(const Manifest& m, std::span<const ManifestEntry> entries) {
  std::vector<LabeledClip> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({e.path, e.label, load_clip(m.resolve(e))});
  return out;
}

FrameSet build_frames(std::span<const LabeledClip> clips, FeatureMode mode, const FramingConfig& cfg) {
  cfg.validate();
  FrameSet set;
  set.mode = mode;
  set.dim = feature_length(mode, cfg.window_samples());
  for (const auto& c : clips) set.append_clip(c.clip_id, c.label, clip_features(c.audio, mode, cfg));
  return set;
}

}  // namespace aer

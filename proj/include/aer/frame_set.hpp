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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aer/frontend.hpp"

namespace aer {

/// Frames of one clip inside a FrameSet.
struct ClipSpan {
  std::string clip_id;
  int label = -1;
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Labelled frames from a list of clips, stored contiguously row-major. Every frame inherits
/// the label of the clip it came from.
struct FrameSet {
  FeatureMode mode = FeatureMode::Time;
  std::size_t dim = 0;
  std::vector<float> values;
  std::vector<int> labels;
  std::vector<ClipSpan> clips;

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  std::span<const float> frame(std::size_t i) const { return {values.data() + i * dim, dim}; }

  void append_clip(std::string clip_id, int label, const FeatureMatrix& features);
};

}  // namespace aer
